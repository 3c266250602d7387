import json
import math

import pytest

import rastergraph as rg

ASC = """ncols 3
nrows 2
xllcorner 0
yllcorner 0
cellsize 1
NODATA_value -9999
1 2 3
4 -9999 6
"""

GEOJSON = json.dumps({
    "type": "FeatureCollection",
    "features": [
        {"type": "Feature", "geometry": {"type": "Point", "coordinates": [0.5, 0.5]},
         "properties": {"name": "a"}},
        {"type": "Feature", "geometry": {"type": "Point", "coordinates": [10, 10]},
         "properties": {"name": "b"}},
    ],
})


def test_asc_reads_bottom_row_first():
    r = rg.read_asc(ASC)
    assert (r.n_cols, r.n_rows) == (3, 2)
    assert r.at(0, 0) == 4 and r.at(0, 1) == 1
    assert r.is_nodata(1, 0)
    assert sorted(r.valid_values()) == [1, 2, 3, 4, 6]


def test_formats_round_trip():
    r = rg.Raster(1.5, -2.0, 0.5, 0.25, 2, 2, [1.0, -0.0, float("nan"), 3.0], nodata=float("nan"), unit="m")
    assert rg.read_coverage_json(rg.write_coverage_json(r)) == r
    back = rg.read_hex_wkb(rg.write_hex_wkb(r))
    assert back.values[:2] == r.values[:2] and math.isnan(back.values[2])
    assert rg.write_hex_wkb(back) == rg.write_hex_wkb(r)


def test_cellwise_ops():
    r = rg.read_asc(ASC)
    s = rg.raster_binary("plus", r, r)
    assert s.at(0, 0) == 8 and s.is_nodata(1, 0)
    kept = rg.raster_const("greater", r, 3)
    assert sorted(kept.valid_values()) == [4, 6]
    assert rg.raster_max(r) == 6 and rg.raster_min(r) == 1
    assert rg.raster_invert(r).at(2, 1) == -3
    with pytest.raises(ValueError):
        rg.raster_binary("modulo", r, r)


def test_geometry_functions():
    assert rg.area("POLYGON((0 0, 2 0, 2 3, 0 3, 0 0))") == pytest.approx(6)
    assert rg.distance("POINT(0 0)", "POINT(3 4)") == pytest.approx(5)
    assert rg.intersects("LINESTRING(0 0, 2 2)", "POLYGON((1 0, 3 0, 3 1, 1 1, 1 0))")
    with pytest.raises(rg.ParseError):
        rg.area("POLYGON((0 0, 1 1")


def test_query_over_workspace():
    ws = rg.Workspace("http://example.org/data")
    assert ws.ingest_geojson(GEOJSON, "http://example.org/ns#Site") > 0
    assert ws.ingest_asc(ASC, "http://example.org/ns#Flood", "cm") > 0
    result = ws.query("""
        PREFIX ex: <http://example.org/ns#>
        SELECT ?n WHERE {
          ?f a ex:Site ; ex:name ?n ; geo:hasGeometry ?g . ?g geo:asWKT ?w .
          ?c a ex:Flood ; geo2:hasCoverage ?cov . ?cov geo2:asCoverageJSON ?r .
          FILTER(geo2:intersects(?w, ?r))
        }""")
    assert result["columns"] == ["n"]
    assert result["rows"] == [('"a"',)]
    assert ws.query_tsv("SELECT ?s WHERE { ?s a ex:Nothing }").startswith("?s")


def test_query_errors_carry_position():
    with pytest.raises(rg.ParseError) as err:
        rg.check_query("SELECT ?x\nWHERE { ?x ?p }")
    assert "2" in str(err.value)
