"""Command line interface behavior, via click's test runner."""

import json
import os

import pytest
from click.testing import CliRunner

from knothom.cli import main
from knothom.tables import rational_pd

MOVIE_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "src",
                         "knothom", "data", "movies")
TRIVIAL = os.path.join(MOVIE_DIR, "trivial-ribbon.movie")
ONE_SADDLE = os.path.join(MOVIE_DIR, "one-saddle-unknot.movie")

LEFT_TREFOIL = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"


def run(*args):
    return CliRunner().invoke(main, list(args))


# -- homology -------------------------------------------------------------

def test_homology_by_name():
    res = run("homology", "--name", "3_1")
    assert res.exit_code == 0, res.output
    assert "free summands" in res.output
    assert "torsion summands" in res.output
    assert "mu" in res.output


def test_homology_json_matches_anchor():
    res = run("homology", "--name", "3_1", "--output", "json")
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert doc["free"] == [[0, -3, 1], [0, -1, 1]]
    assert doc["torsion"] == [[-2, -7, 1, 1], [-2, -5, 1, 1]]
    assert doc["theory"] == "bn"
    assert doc["bound"]["label"] == "mu"
    assert doc["bound"]["value"] == 1


def test_homology_by_pd_and_file(tmp_path):
    res = run("homology", "--pd", LEFT_TREFOIL)
    assert res.exit_code == 0
    p = tmp_path / "k.pd"
    p.write_text(LEFT_TREFOIL + "\n")
    res2 = run("homology", "--input", str(p))
    assert res2.exit_code == 0
    # the file route adds a "knot: <name>" header line; the rest agrees
    body = [ln for ln in res.output.splitlines() if not ln.startswith("knot:")]
    body2 = [ln for ln in res2.output.splitlines() if not ln.startswith("knot:")]
    assert body == body2


def test_homology_source_required():
    res = run("homology")
    assert res.exit_code == 2
    res = run("homology", "--pd", LEFT_TREFOIL, "--name", "3_1")
    assert res.exit_code == 2
    assert "exactly one" in res.output


def test_homology_empty_pd_is_input_error():
    res = run("homology", "--pd", "")
    assert res.exit_code == 2
    assert "empty" in res.output.lower()


def test_homology_unknown_name():
    res = run("homology", "--name", "9_99")
    assert res.exit_code == 2


def test_homology_generic_theory_rejected():
    res = run("homology", "--name", "3_1", "--theory", "alpha")
    assert res.exit_code == 2


def test_homology_alpha_specialization():
    res = run("homology", "--name", "3_1", "--theory", "alpha@0,t/f2",
              "--output", "json")
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert doc["bound"]["label"] == "nu_phi"
    assert doc["bound"]["value"] == 1


# -- bound ----------------------------------------------------------------

def test_bound_gap():
    res = run("bound", "unknot", "3_1")
    assert res.exit_code == 0, res.output
    assert "gap" in res.output.lower() or "1" in res.output


def test_bound_same_knot_is_zero():
    res = run("bound", "3_1", "3_1", "--output", "json")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["gap"] == 0


def test_bound_distance_hypothesis():
    ok = run("bound", "unknot", "3_1", "-d", "1")
    assert ok.exit_code == 0
    bad = run("bound", "unknot", "3_1", "-d", "0")
    assert bad.exit_code == 1


def test_bound_movie_supplies_distance():
    res = run("bound", "unknot", "unknot", "--movie", TRIVIAL)
    assert res.exit_code == 0, res.output


def test_bound_rejects_links():
    hopf = "PD[X[4,1,3,2],X[2,3,1,4]]"
    res = run("bound", hopf, "3_1")
    assert res.exit_code == 2
    assert "knot" in res.output.lower()


# -- verify ---------------------------------------------------------------

def test_verify_frobenius():
    res = run("verify", "frobenius")
    assert res.exit_code == 0, res.output
    assert "PASS" in res.output
    assert "instances passed" in res.output
    assert "FAIL" not in res.output


def test_verify_neckcut_single_theory():
    res = run("verify", "neckcut", "--theory", "bn")
    assert res.exit_code == 0, res.output


def test_verify_dot_crossing_small():
    res = run("verify", "dot-crossing", "--max-crossings", "3")
    assert res.exit_code == 0, res.output
    assert "3_1" in res.output


def test_verify_parallel_jobs():
    res = run("verify", "frobenius", "--jobs", "2")
    assert res.exit_code == 0, res.output


def test_verify_unknown_suite():
    res = run("verify", "nope")
    assert res.exit_code == 2
    assert "unknown suite" in res.output


# -- movie ----------------------------------------------------------------

def test_movie_frames_and_map():
    res = run("movie", "--script", TRIVIAL)
    assert res.exit_code == 0, res.output
    assert "frame" in res.output.lower()


def test_movie_compare_identity():
    res = run("movie", "--script", TRIVIAL, "--compose-reverse",
              "--compare", "id")
    assert res.exit_code == 0, res.output
    assert "equal" in res.output.lower()


def test_movie_compare_h_power():
    res = run("movie", "--script", ONE_SADDLE, "--compose-reverse",
              "--compare", "h^1")
    assert res.exit_code == 0, res.output
    assert "equal" in res.output.lower()


def test_movie_compare_needs_closed_movie(tmp_path):
    p = tmp_path / "open.movie"
    p.write_text("start unknot\nbirth\n")
    res = run("movie", "--script", str(p), "--compare", "id")
    assert res.exit_code == 2


def test_movie_script_errors_are_input_errors(tmp_path):
    p = tmp_path / "bad.movie"
    p.write_text("start unknot\nsaddle 9 4\n")
    res = run("movie", "--script", str(p))
    assert res.exit_code == 2
    assert "line 2" in res.output


def test_movie_missing_file():
    res = run("movie", "--script", "/nonexistent/x.movie")
    assert res.exit_code == 2


def test_movie_json_output():
    res = run("movie", "--script", TRIVIAL, "--output", "json")
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert doc["frames"][0]["crossings"] == 0
