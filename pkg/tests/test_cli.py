import json
import random

import pytest

from dgkernel import jsonio
from dgkernel.cli import main
from dgkernel.complexes import (
    ChainMap,
    Proto,
    functor_L,
    identity_map,
    make_complex,
    suspension,
    unit_complex,
)
from dgkernel.dgcat import (
    exterior_g_category,
    left_module_from_complex,
    representable_cauchy_data,
    trivial_weight,
    unit_dg_category,
)
from dgkernel.jsonio import right_module_to_json
from dgkernel.rand import rand_double_complex
from dgkernel.zlinalg import IntMatrix

M2 = make_complex({1: 1, 0: 1}, {1: [[2]]})


@pytest.fixture()
def files(tmp_path):
    paths = {}

    def write(name, payload):
        p = tmp_path / name
        jsonio.dump(payload, str(p))
        paths[name] = str(p)
        return str(p)

    write("m2.json", jsonio.complex_to_json(M2))
    write("k0.json", jsonio.complex_to_json(unit_complex()))
    write("id_m2.json", jsonio.proto_to_json(identity_map(M2)))
    lz = functor_L(unit_complex())
    slz = suspension(lz, -1)
    f = ChainMap(slz, lz, 0, {-1: IntMatrix.from_rows([[1]])})
    t = Proto(lz, slz, 0, {-1: IntMatrix.from_rows([[1]])})
    write("split_f.json", jsonio.proto_to_json(f))
    write("split_t.json", jsonio.proto_to_json(t))
    write("dc.json", jsonio.double_complex_to_json(
        rand_double_complex(random.Random(5))))
    ext = exterior_g_category(1)
    write("ext.json", jsonio.category_to_json(ext))
    write("cauchy.json", jsonio.cauchy_data_to_json(
        representable_cauchy_data(ext, "*")))
    bad = jsonio.cauchy_data_to_json(representable_cauchy_data(ext, "*"))
    for key in bad["eps"]:
        for deg in bad["eps"][key]:
            bad["eps"][key][deg]["data"] = [
                str(-int(x)) for x in bad["eps"][key][deg]["data"]]
    write("cauchy_bad.json", bad)
    badcat = jsonio.category_to_json(ext)
    badcat["identities"]["*"]["vec"] = ["2"]
    write("ext_bad.json", badcat)
    unit = unit_dg_category()
    write("unit_cat.json", jsonio.category_to_json(unit))
    write("weight.json", right_module_to_json(trivial_weight(unit)))
    write("diagram.json", right_module_to_json(
        left_module_from_complex(unit, M2)))
    paths["tmp"] = str(tmp_path)
    return paths


class TestVerbs:
    def test_homology_report(self, files, capsys):
        assert main(["homology", files["m2.json"]]) == 0
        out = capsys.readouterr().out
        assert "H_0 = Z/2" in out

    def test_homology_json_flag(self, files, capsys):
        assert main(["--json", "homology", files["m2.json"]]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["homology"] == {"H_0": "Z/2"}

    def test_cone_of_identity_is_acyclic(self, files, capsys):
        assert main(["cone", "--map-cone-of-identity", files["k0.json"]]) == 0
        out = capsys.readouterr().out
        assert "H = 0" in out

    def test_cone_of_chain_map(self, files, capsys):
        assert main(["cone", "--f", files["id_m2.json"]]) == 0
        assert "H = 0" in capsys.readouterr().out

    def test_tensor_and_hom_write_output(self, files, capsys, tmp_path):
        out_t = str(tmp_path / "t_out.json")
        assert main(["tensor", files["m2.json"], files["m2.json"],
                     "--out", out_t]) == 0
        capsys.readouterr()
        written = jsonio.complex_from_json(jsonio.load(out_t))
        assert written.rank(1) == 2
        out_h = str(tmp_path / "h_out.json")
        assert main(["hom", files["m2.json"], files["k0.json"],
                     "--out", out_h]) == 0

    def test_cokernel_protosplit_example(self, files, capsys):
        assert main(["cokernel-protosplit", "--f", files["split_f.json"],
                     "--t", files["split_t.json"]]) == 0
        out = capsys.readouterr().out
        assert "cokernel ranks: {'0': 1}" in out

    def test_tot_with_comparison(self, files, capsys):
        assert main(["tot", files["dc.json"], "--compare-colim"]) == 0
        assert "comparison iso: ok" in capsys.readouterr().out

    def test_colim_tensor_case(self, files, capsys):
        assert main(["colim", "--category", files["unit_cat.json"],
                     "--weight", files["weight.json"],
                     "--diagram", files["diagram.json"]]) == 0
        assert "colimit ranks" in capsys.readouterr().out

    def test_verify_cauchy_pass_and_fail(self, files, capsys):
        assert main(["verify-cauchy", files["cauchy.json"], "--naturality"]) == 0
        capsys.readouterr()
        assert main(["verify-cauchy", files["cauchy_bad.json"]]) == 1
        assert "snake fails" in capsys.readouterr().out

    def test_verify_category_pass_and_fail(self, files, capsys):
        assert main(["verify-category", files["ext.json"]]) == 0
        capsys.readouterr()
        assert main(["verify-category", files["ext_bad.json"]]) == 1
        out = capsys.readouterr().out
        assert "unit" in out or "identity" in out

    def test_input_errors_exit_two(self, files, capsys):
        assert main(["homology", files["tmp"] + "/absent.json"]) == 2
        truncated = files["tmp"] + "/trunc.json"
        with open(truncated, "w") as fh:
            fh.write("{\"lo\": 0}")
        assert main(["homology", truncated]) == 2
        err = capsys.readouterr().err
        assert "input error" in err
        assert "hi" in err  # names the offending field


class TestDeterminism:
    def test_byte_identical_reports(self, files, capsys):
        main(["--json", "tot", files["dc.json"], "--compare-colim"])
        first = capsys.readouterr().out
        main(["--json", "tot", files["dc.json"], "--compare-colim"])
        second = capsys.readouterr().out
        assert first == second


class TestSuiteVerb:
    def test_suite_passes_and_reports_each_criterion(self, capsys):
        assert main(["suite"]) == 0
        out = capsys.readouterr().out
        for k in range(1, 13):
            assert f"criterion {k:2d}" in out
        assert "FAIL" not in out
