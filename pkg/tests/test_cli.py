import json
from io import StringIO

from cli.formatting import TEXT, TSV, diamond_grid, render
from cli.routes import build_parser, output_path, run
from database.schemas import OUTPUT_MODELS, SweepLine


def invoke(*argv):
    out = StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_analyze_json():
    code, text = invoke("analyze", "x^3+x*y^2")
    assert code == 0
    report = json.loads(text)
    assert report["charges"] == ["1/3", "1/3"]
    assert report["is_calabi_yau"] is False
    assert report["milnor_number"] == 4
    assert report["canonical_id"] == "chain(2,3)"


def test_analyze_quintic_by_option():
    code, text = invoke("analyze", "--poly", "x1^5+x2^5+x3^5+x4^5+x5^5")
    report = json.loads(text)
    assert code == 0
    assert report["central_charge"] == "3"
    assert report["milnor_number"] == 1024


def test_transpose_report():
    code, text = invoke("transpose", "chain-quintic")
    report = json.loads(text)
    assert report["weights"] == [64, 48, 52, 51, 41]
    assert report["degree"] == 256
    assert report["is_gorenstein"] is False


def test_diamond_tsv():
    code, text = invoke("--tsv", "diamond", "p8")
    assert code == 0
    assert text == "1\n1\t1\n1\n"


def test_mirror_check_chain_quintic():
    code, text = invoke("mirror-check", "--poly", "chain-quintic", "-G", "j")
    report = json.loads(text)
    assert code == 0
    assert report["passed"] is True
    assert report["krawitz_passed"] is True


def test_group_with_subgroups():
    code, text = invoke("group", "d4", "--subgroups")
    report = json.loads(text)
    assert report["aut_order"] == 6
    assert report["exponent"] == 6
    assert report["j"]["order"] == 3
    assert [g["order"] for g in report["subgroups"]] == [1, 2, 3, 6]


def test_dualgroup():
    code, text = invoke("dualgroup", "quintic", "-G", "j")
    report = json.loads(text)
    assert report["dual"]["order"] == 625
    assert report["involution"] is True


def test_correlator():
    code, text = invoke("correlator", "quintic", "-i", "j,j,j^4")
    report = json.loads(text)
    assert code == 0
    assert report["status"] == "value"
    assert report["value"] == "1"
    assert report["normalization"] == "1/3125"
    assert report["normalized_value"] == "1/3125"
    assert "raw" not in report and "prefactor" not in report


def test_r_spin_sweep_lines():
    code, text = invoke("correlator", "--r-spin", "3", "--points", "4", "--broad-nodes")
    lines = [json.loads(line) for line in text.splitlines()]
    (line,) = [l for l in lines if l["insertions"] == [1, 1, 1, 1]]
    assert line["value"] == "1/3"
    assert line["closed_form"] == "1/3"


def test_moduli():
    code, text = invoke("moduli", "quintic", "-i", "j,j,j^4")
    report = json.loads(text)
    assert report["nonempty"] is True
    assert report["cover_degree"] == "3125"


def test_catalog_enumerate_lines():
    code, text = invoke("catalog", "enumerate", "--vars", "2", "--max-exp", "3")
    assert code == 0
    assert len(text.splitlines()) == 10


def test_catalog_verify_rejects_singular(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"exponents": [[1, 1], [1, 1]]}\n', encoding="utf-8")
    code, text = invoke("catalog", "verify", str(path))
    assert code == 10
    assert json.loads(text)["error"] == "SingularMatrix"


def test_error_exit_codes():
    code, text = invoke("analyze", "x^2*y^2+x*y")
    assert code == 10
    assert json.loads(text)["error"] == "SingularMatrix"

    code, text = invoke("analyze", "x^+y")
    assert code == 2
    assert json.loads(text)["detail"]["offset"] == 2


def test_missing_polynomial():
    code, text = invoke("analyze")
    assert code == 1
    assert json.loads(text)["error"] == "ValueError"


def test_schema():
    code, text = invoke("schema", "correlator")
    schema = json.loads(text)
    assert "status" in schema["properties"]

    code, text = invoke("schema")
    assert "catalog-verify" in json.loads(text)


def test_out_directory(tmp_path):
    code, _ = invoke("--out", str(tmp_path), "analyze", "d4")
    assert code == 0
    (path,) = tmp_path.iterdir()
    assert path.name.startswith("analyze_") and path.suffix == ".json"
    assert json.loads(path.read_text(encoding="utf-8"))["milnor_number"] == 4


def test_out_file(tmp_path):
    target = tmp_path / "reports" / "d4.txt"
    code, _ = invoke("--text", "--out", str(target), "analyze", "d4")
    assert code == 0
    assert "milnor_number: 4" in target.read_text(encoding="utf-8")


def test_output_path_for_new_directory(tmp_path):
    path = output_path(str(tmp_path / "new") + "/", "diamond", TSV)
    assert path.parent.is_dir()
    assert path.name.startswith("diamond_") and path.suffix == ".tsv"


def test_parser_defaults():
    args = build_parser().parse_args(["frobenius", "quintic"])
    assert args.group == "sl"
    assert args.format == "json"


def test_diamond_grid():
    assert diamond_grid([[1], [1, 1], [1]]) == " 1\n1 1\n 1"


def test_render_sweep_lines():
    lines = [SweepLine(r=3, genus=0, insertions=[1, 1, 1, 1], status="value", value=1)]
    assert render(lines, TSV) == "r\tgenus\tinsertions\tstatus\tvalue\tclosed_form\n3\t0\t1,1,1,1\tvalue\t1\t\n"
    assert "status: value" in render(lines, TEXT)


def test_schema_write(tmp_path):
    code, text = invoke("schema", "--write", str(tmp_path))
    assert code == 0
    written = json.loads(text)
    assert set(written) == set(OUTPUT_MODELS)
    for name, model in OUTPUT_MODELS.items():
        path = tmp_path / f"{name}.schema.json"
        assert written[name] == str(path)
        assert json.loads(path.read_text(encoding="utf-8")) == model.model_json_schema(mode="serialization")


def test_reports_match_their_schemas():
    commands = {
        "analyze": ["analyze", "d4"],
        "transpose": ["transpose", "chain-quintic"],
        "diamond": ["diamond", "p8"],
        "moduli": ["moduli", "quintic", "-i", "j,j,j^4"],
        "correlator": ["correlator", "quintic", "-i", "j,j,j^4"],
    }
    for name, argv in commands.items():
        code, text = invoke(*argv)
        assert code == 0
        OUTPUT_MODELS[name].model_validate_json(text)
        schema = OUTPUT_MODELS[name].model_json_schema(mode="serialization")
        report = json.loads(text)
        assert set(report) <= set(schema["properties"])
        assert set(schema.get("required", [])) <= set(report)


def test_catalog_store_and_list(tmp_path):
    path = tmp_path / "catalog.txt"
    path.write_text("d4\n", encoding="utf-8")
    url = f"sqlite:///{tmp_path / 'catalog.db'}"
    code, _ = invoke("catalog", "verify", str(path), "--store", "--db", url)
    assert code == 0

    code, text = invoke("catalog", "stored", "--db", url)
    assert code == 0
    (line,) = text.splitlines()
    record = json.loads(line)
    assert record["canonical_id"] == "chain(2,3)"
    assert record["checks"]["charges"] == "pass"
