from pathlib import Path

import pytest

from crookedtiles import __version__
from crookedtiles.cli import EXIT_INVALID_INPUT, EXIT_OK, EXIT_VERIFICATION_FAILED, main
from crookedtiles.render import parse_report

from .helpers import parse_obj


def read_report(path: Path) -> dict:
    return parse_report(path.read_text(encoding="utf-8"))


class TestTiles:
    def test_tiles(self, tmp_path: Path) -> None:
        out, report = tmp_path / "tiles.svg", tmp_path / "tiles.txt"
        options = ["--depth", "2", "--report", str(report)]
        code = main(["tiles", *options, "--out", str(out)])
        assert code == EXIT_OK
        assert "viewBox" in out.read_text(encoding="utf-8")
        values = read_report(report)
        assert values["tiles"] == "10"
        assert values["boundary_edges"] == "12"
        assert values["convex"] == "true"
        assert values["disjoint"] == "true"
        assert values["traces"] == "3,3,3"

    @pytest.mark.parametrize("traces", ["3,3,3", "4,4,4"])
    def test_depth_four(self, tmp_path: Path, traces: str) -> None:
        report = tmp_path / "tiles.txt"
        options = ["--traces", traces, "--depth", "4", "--report", str(report)]
        code = main(["tiles", *options, "--out", str(tmp_path / "tiles.svg")])
        assert code == EXIT_OK
        values = read_report(report)
        assert values["tiles"] == "46"
        assert values["boundary_edges"] == "48"
        assert values["convex"] == "true"
        assert values["disjoint"] == "true"

    def test_inadmissible_traces(self, tmp_path: Path) -> None:
        out = tmp_path / "tiles.svg"
        code = main(["tiles", "--traces", "2,3,3", "--out", str(out)])
        assert code == EXIT_INVALID_INPUT
        assert not out.exists()

    def test_malformed_traces(self) -> None:
        with pytest.raises(SystemExit) as error:
            main(["tiles", "--traces", "3,3"])
        assert error.value.code == 2

    def test_config_file(self, tmp_path: Path) -> None:
        config = tmp_path / "run.conf"
        report = tmp_path / "report.txt"
        config.write_text(
            f"traces = 4, 4, 4\ndepth = 1\nreport = {report}\n", encoding="utf-8"
        )
        out = tmp_path / "tiles.svg"
        code = main(["tiles", "--config", str(config), "--out", str(out)])
        assert code == EXIT_OK
        values = read_report(report)
        assert values["traces"] == "4,4,4"
        assert values["tiles"] == "4"

    def test_bad_config_file(self, tmp_path: Path) -> None:
        config = tmp_path / "run.conf"
        config.write_text("depth = 1\ncolour = red\n", encoding="utf-8")
        assert main(["tiles", "--config", str(config)]) == EXIT_INVALID_INPUT


class TestNielsen:
    def test_nielsen(self, tmp_path: Path) -> None:
        report = tmp_path / "nielsen.txt"
        options = ["--traces", "4,4,4", "--words", "2", "--report", str(report)]
        code = main(["nielsen", *options, "--out", str(tmp_path / "n.svg")])
        assert code == EXIT_OK
        values = read_report(report)
        assert values["triangles"] == "10"
        assert float(values["max_radius"]) == pytest.approx(1.0, abs=1e-6)


class TestDomain:
    def test_coefficients(self, tmp_path: Path) -> None:
        out, report = tmp_path / "domain.obj", tmp_path / "domain.txt"
        options = ["--u", "1,2,0.5,0.5,2,1", "--clip-radius", "5"]
        code = main(["domain", *options, "--out", str(out), "--report", str(report)])
        assert code == EXIT_OK
        _, faces, objects = parse_obj(out.read_text(encoding="utf-8"))
        assert len(objects) == 9
        values = read_report(report)
        assert values["kind"] == "triangle"
        assert values["faces"] == "3"
        assert values["nondegenerate"] == "true"
        assert values["disjoint"] == "true"
        assert values["mesh_triangles"] == str(len(faces))
        assert values["sign_convention"] == "positive u gives negative alpha"
        assert all(float(x) < 0 for x in values["alpha"].split(","))
        slabs = [float(x) for x in values["slab_coefficients"].split(",")]
        assert slabs == pytest.approx([1.0, 2.0, 0.5, 0.5, 2.0, 1.0], abs=1e-8)

    def test_alpha(self, tmp_path: Path) -> None:
        out, report = tmp_path / "domain.obj", tmp_path / "domain.txt"
        options = ["--traces", "4,4,4", "--depth", "2", "--alpha", "1,1,1"]
        code = main(["domain", *options, "--out", str(out), "--report", str(report)])
        assert code == EXIT_OK
        values = read_report(report)
        assert values["kind"] in ("triangle", "quadrilateral")
        assert values["disjoint"] == "true"
        alpha = [float(x) for x in values["alpha"].split(",")]
        assert alpha[0] == pytest.approx(alpha[1], rel=1e-6)
        assert alpha[1] == pytest.approx(alpha[2], rel=1e-6)
        assert alpha[0] > 0

    def test_alpha_default_depth(self, tmp_path: Path) -> None:
        out, report = tmp_path / "domain.obj", tmp_path / "domain.txt"
        options = ["--traces", "3,3,3", "--alpha", "1,1,1"]
        code = main(["domain", *options, "--out", str(out), "--report", str(report)])
        assert code == EXIT_OK
        values = read_report(report)
        assert values["disjoint"] == "true"
        convention = "requested alpha by point reflection when reflected"
        assert values["sign_convention"] == convention
        assert all(float(x) > 0 for x in values["alpha"].split(","))

    def test_opposite_signs(self, tmp_path: Path) -> None:
        out = tmp_path / "domain.obj"
        code = main(["domain", "--depth", "2", "--alpha", "1,-1,1", "--out", str(out)])
        assert code == EXIT_INVALID_INPUT
        assert not out.exists()

    def test_needs_target(self) -> None:
        with pytest.raises(SystemExit):
            main(["domain"])


class TestVerify:
    def test_pass(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["verify", "--suite", "farey", "--suite", "gram"]) == EXIT_OK
        values = parse_report(capsys.readouterr().out)
        assert values["farey"] == "pass"
        assert values["gram"] == "pass"
        assert values["failed"] == "none"

    def test_fail(self, tmp_path: Path) -> None:
        report = tmp_path / "verify.txt"
        options = ["--suite", "kernel", "--tolerance", "1e-30"]
        code = main(["verify", *options, "--report", str(report)])
        assert code == EXIT_VERIFICATION_FAILED
        values = read_report(report)
        assert values["kernel"] == "fail"
        assert values["failed"] == "kernel"

    def test_unknown_suite(self) -> None:
        with pytest.raises(SystemExit):
            main(["verify", "--suite", "nonsense"])

    def test_default_configuration(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["verify"]) == EXIT_OK
        values = parse_report(capsys.readouterr().out)
        assert values["failed"] == "none"
        assert values["opposite_sign.detail"].startswith("21 directions")

    def test_tampered_tolerance(self, capsys: pytest.CaptureFixture) -> None:
        code = main(["verify", "--depth", "2", "--tolerance", "1e-30"])
        assert code == EXIT_VERIFICATION_FAILED
        values = parse_report(capsys.readouterr().out)
        failed = values["failed"].split(",")
        for name in ("kernel", "gram", "structure", "rank_one", "tiling"):
            assert name in failed
            assert values[name] == "fail"


class TestFarey:
    def test_listing(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["farey", "--depth", "2"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("#")
        assert len(lines) == 1 + 10
        assert lines[1] == "0 0 - - (1/0, 0/1, 1/1) (a, b, BA)"


def test_version(capsys: pytest.CaptureFixture) -> None:
    with pytest.raises(SystemExit) as error:
        main(["--version"])
    assert error.value.code == 0
    assert __version__ in capsys.readouterr().out
