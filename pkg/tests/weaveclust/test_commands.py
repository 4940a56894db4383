import json

import pytest

from weaveclust import verify
from weaveclust.exceptions import UnsupportedConfiguration
from weaveclust.ngraph import build_linear, moves
from weaveclust.serializers import dump_json
from weaveclust.verify import Check


class TestRun:
    def test_fail_unknown_command(self, cli):
        code, out, err = cli("frobnicate")

        assert code == 2
        assert out == ""
        assert "usage: weaveclust" in err

    def test_fail_no_command(self, cli):
        code, _out, err = cli()

        assert code == 2
        assert "usage: weaveclust" in err

    def test_fail_bad_option(self, cli):
        code, _out, _err = cli("mutate", "--type", "A2", "--at", "one")

        assert code == 2


class TestMutate:
    def test_success(self, cli):
        code, out, _err = cli("mutate", "--matrix", "[[0,1],[-3,0]]", "--at", "1")

        assert code == 0
        assert out == '{"matrix": [[0, -1], [3, 0]]}\n'

    def test_involution_success(self, cli):
        _code, described, _err = cli("classify", "--type", "D4")
        code, out, _err = cli("mutate", "--type", "D4", "--at", "2", "2")

        assert code == 0
        assert json.loads(out)["matrix"] == json.loads(described)["matrix"]

    def test_seed_success(self, cli):
        code, out, _err = cli("mutate", "--type", "A2", "--backend", "y", "--at", "1")

        assert code == 0
        assert json.loads(out)["coeffs"] == ["1/y1", "y1*y2 + y2"]

    def test_seed_file_success(self, cli, tmp_path):
        path = tmp_path / "seed.json"
        path.write_text(json.dumps({"backend": "pc", "matrix": [[0, 1], [-1, 0]]}))

        code, out, _err = cli("mutate", "--input", str(path), "--at", "1")

        assert code == 0
        assert json.loads(out) == {"backend": "pc", "matrix": [[0, -1], [1, 0]], "c": [[-1, 1], [0, 1]]}

    @pytest.mark.parametrize(
        "argv",
        [
            ("--matrix", "[[0,1],[1,0]]", "--at", "1"),
            ("--matrix", "[[0,1],", "--at", "1"),
            ("--matrix", "[[0,1],[-1,0]]", "--at", "3"),
            ("--matrix", "[[0,1],[-1,0]]", "--at", "0"),
            ("--type", "X9", "--at", "1"),
        ],
    )
    def test_fail_malformed(self, cli, argv):
        code, out, _err = cli("mutate", *argv)

        assert code == 2
        assert out == ""

    def test_fail_not_bipartite(self, cli):
        code, _out, _err = cli("mutate", "--matrix", "[[0,1,0],[-1,0,1],[0,-1,0]]", "--coxeter", "1")

        assert code == 1


class TestExchangeGraph:
    def test_count_success(self, cli):
        code, out, _err = cli("exchange-graph", "--type", "D4", "--count")

        assert (code, out) == (0, "50\n")

    def test_jobs_success(self, cli):
        code, out, _err = cli("exchange-graph", "--type", "A3", "--count", "--jobs", "2")

        assert (code, out) == (0, "14\n")

    def test_json_success(self, cli):
        code, out, _err = cli("exchange-graph", "--type", "B2", "--backend", "y")
        data = json.loads(out)

        assert code == 0
        assert data["backend"] == "y"
        assert data["count"] == 6
        assert data["complete"] is True

    def test_budget_success(self, cli):
        code, out, _err = cli("exchange-graph", "--type", "D4", "--count", "--max-nodes", "3")

        assert (code, out) == (3, "3\n")

    def test_dot_success(self, cli, tmp_path):
        path = tmp_path / "graph.dot"

        code, out, _err = cli("exchange-graph", "--type", "A2", "--format", "dot", "--out", str(path))

        assert (code, out) == (0, "")
        assert path.read_text().startswith("graph exchange {")
        assert path.read_text().count(" -- ") == 5


class TestClassify:
    def test_matrix_success(self, cli):
        code, out, _err = cli("classify", "--matrix", "[[0,1,-1],[-1,0,1],[1,-1,0]]")

        assert code == 0
        assert json.loads(out)["type"] == "A3"

    def test_type_success(self, cli):
        code, out, _err = cli("classify", "--type", "D4")
        data = json.loads(out)

        assert code == 0
        assert (data["seeds"], data["cluster_variables"], data["coxeter_number"]) == (50, 16, 6)

    def test_catalog_success(self, cli):
        code, out, _err = cli("classify", "--catalog")
        names = [entry["type"] for entry in json.loads(out)]

        assert code == 0
        assert {"A1", "E8", "G2", "Dtilde4"} <= set(names)

    def test_fail_no_source(self, cli):
        code, _out, _err = cli("classify")

        assert code == 2


class TestCoxeter:
    def test_success(self, cli):
        code, out, _err = cli("coxeter", "--type", "A3", "--orbit", "3")
        data = json.loads(out)

        assert code == 0
        assert data["sequence"] == [1, 3, 2]
        assert data["order"] == 3
        assert data["coxeter_number"] == 4
        assert data["orbit"][0] == data["orbit"][3]

    def test_infinite_success(self, cli):
        code, out, _err = cli("coxeter", "--type", "Dtilde4", "--depth", "5")

        assert code == 0
        assert json.loads(out)["order"] == "infinite(≥5)"


class TestFold:
    def test_fold_success(self, cli):
        code, out, _err = cli("fold", "--triple", "A3/Z2")
        data = json.loads(out)

        assert code == 0
        assert data["orbits"] == [[1, 3], [2]]
        assert data["type"] in ("B2", "C2")
        assert data["admissible"]["admissible"] is True

    def test_action_success(self, cli):
        action = json.dumps({"degree": 4, "generators": [[[2, 3, 4]]]})

        code, out, _err = cli("fold", "--matrix", "[[0,-1,-1,-1],[1,0,0,0],[1,0,0,0],[1,0,0,0]]", "--action", action, "--op", "count")

        assert (code, out) == (0, "8\n")

    def test_foldable_success(self, cli):
        code, out, _err = cli("fold", "--triple", "D4/Z2", "--op", "foldable")

        assert code == 0
        assert json.loads(out) == {"globally_foldable": True, "folded_seeds": 20}

    def test_coxeter_success(self, cli):
        code, out, _err = cli("fold", "--triple", "D4/Z3", "--op", "coxeter", "--depth", "2")

        assert code == 0
        assert json.loads(out)["compatible"] is True

    def test_fail_not_admissible(self, cli):
        action = json.dumps({"degree": 3, "generators": [[[1, 2]]]})

        code, _out, _err = cli("fold", "--type", "A3", "--action", action)

        assert code == 1

    def test_fail_missing_action(self, cli):
        code, _out, _err = cli("fold", "--type", "A3")

        assert code == 2


class TestBraid:
    def test_describe_success(self, cli):
        code, out, _err = cli("braid", "--word", "beta0(A2)", "--transform", "stabilize-closure")
        data = json.loads(out)

        assert code == 0
        assert data["strands"] == 3
        assert data["length"] == 10

    def test_equivalent_success(self, cli):
        code, out, _err = cli("braid", "--word", "s1 s2 s1", "--to", "s2 s1 s2")
        data = json.loads(out)

        assert code == 0
        assert data["equivalent"] is True
        assert data["replayed"] is True
        assert data["trace"] == [{"move": "braid", "position": 1}]

    def test_budget_success(self, cli):
        code, out, _err = cli("braid", "--word", "beta(2,2,2)", "--to", "s1 s1 s1 s2 s1 s1 s1 s2 s1 s1 s1 s2", "--cyclic", "--budget", "2")

        assert code == 3
        assert json.loads(out)["equivalent"] == "unknown"

    def test_fail_word(self, cli):
        code, _out, _err = cli("braid", "--word", "s1 x2")

        assert code == 2


class TestBrick:
    def test_success(self, cli):
        code, out, _err = cli("brick", "--word", "beta0(2,2,2)")
        data = json.loads(out)

        assert code == 0
        assert data["type"] == "D4"
        assert len(data["diagram"]["bricks"]) == 4

    def test_dot_success(self, cli):
        code, out, _err = cli("brick", "--word", "s1^4", "--format", "dot")

        assert code == 0
        assert out.startswith("digraph quiver {")


class TestNGraph:
    def test_quiver_success(self, cli):
        code, out, _err = cli("ngraph", "--family", "tripod", "--params", "2", "2", "2", "--op", "quiver")

        assert code == 0
        assert json.loads(out)["type"] == "D4"

    def test_show_success(self, cli):
        code, out, _err = cli("ngraph", "--family", "linear", "--params", "2")

        assert code == 0
        assert json.loads(out)["boundary_word"] == "s1^5"

    def test_input_success(self, cli, tmp_path):
        path = tmp_path / "graph.json"
        path.write_text(dump_json(build_linear(3).to_dict()))

        code, out, _err = cli("ngraph", "--input", str(path), "--op", "mutate", "--at", "2")

        assert code == 0
        assert json.loads(out)["boundary_word"] == "s1^6"

    def test_symmetry_success(self, cli):
        code, out, _err = cli("ngraph", "--family", "linear", "--params", "3", "--op", "symmetry", "--steps", "3", "--permutation", "3", "2", "1")

        assert code == 0
        assert json.loads(out) == {"invariant": True}

    def test_padding_success(self, cli):
        code, out, _err = cli("ngraph", "--family", "tripod", "--params", "1", "1", "1", "--op", "padding")
        data = json.loads(out)

        assert code == 0
        assert data["outer_word"] == "s2 s1^2 s2 s1^2 s2 s1^2"

    def test_equivariance_max_skipped_success(self, cli, monkeypatch):
        supported = moves.mutate

        def first_cycle_unsupported(item, k):
            if k == 0:
                raise UnsupportedConfiguration("cycle 1 has no room for a flip")
            return supported(item, k)

        monkeypatch.setattr(moves, "mutate", first_cycle_unsupported)

        code, out, _err = cli(
            "ngraph", "--family", "linear", "--params", "3", "--op", "equivariance",
            "--trials", "20", "--seed", "3", "--max-skipped", "0",
        )
        data = json.loads(out)

        assert code == 0
        assert data["skipped"] > 0
        assert data["max_skipped"] == 0
        assert data["passed"] is False

    def test_fail_params(self, cli):
        code, _out, _err = cli("ngraph", "--family", "tripod", "--params", "2")

        assert code == 2


class TestVerify:
    def test_success(self, cli):
        code, out, _err = cli("verify", "--suite", "dynkin")

        assert code == 0
        assert out.splitlines()[-1].endswith("checks passed")
        assert all(line.startswith("PASS") for line in out.splitlines()[:-1])

    def test_json_success(self, cli):
        code, out, _err = cli("verify", "--suite", "coxeter", "--format", "json")

        assert code == 0
        assert all(result["passed"] for result in json.loads(out))

    def test_seed_success(self, cli, monkeypatch):
        recorded = Check("equivariance", "recorded", "test", lambda seed=None: (True, seed), seeded=True)
        monkeypatch.setitem(verify._REGISTRY, "equivariance", {"recorded": recorded})

        code, out, _err = cli("verify", "--suite", "equivariance", "--seed", "11", "--format", "json")

        assert code == 0
        assert [result["value"] for result in json.loads(out)] == [11]
