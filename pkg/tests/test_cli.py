import json
import os

from corpora import DATA
from qealm.cli import main
from qealm.generate import GeneratorParams, generate_random_instance
from qealm.scan import find_problem_files, records_to_csv, scan_corpus


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_and_classify(capsys):
    code, out, _ = run(capsys, "check", "--json", str(DATA / "example1.p"))
    assert code == 0 and json.loads(out)["member"] is True
    code, out, _ = run(capsys, "classify", str(DATA / "example1.p"))
    assert code == 0 and "SigmaP(5)" in out


def test_solve_and_oracle(capsys):
    code, out, _ = run(capsys, "solve", "--json", str(DATA / "example1.p"))
    assert code == 0 and json.loads(out)["verdict"] == "UNSAT"
    code, out, _ = run(capsys, "oracle", str(DATA / "example1.p"))
    assert code == 0 and out.strip() == "UNSAT"


def test_oracle_budget_exit_code(capsys):
    code, _, err = run(capsys, "oracle", "--budget", "3", str(DATA / "example1.p"))
    assert code == 3 and "budget" in err


def test_rejections(tmp_path, capsys):
    bad = tmp_path / "bad.p"
    bad.write_text("cnf(a, axiom, (a = b)).")
    assert run(capsys, "check", str(bad))[0] == 2
    non = tmp_path / "non.p"
    non.write_text("cnf(a, axiom, (p(X,Y) | q(Y,X))).\ncnf(b, axiom, (p(c,c))).")
    assert run(capsys, "check", str(non))[0] == 0
    assert run(capsys, "solve", str(non))[0] == 2
    assert run(capsys, "closure-test", str(non))[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.p"))[0] == 2


def test_closure_cli(capsys):
    code, out, _ = run(capsys, "closure-test", "--json", str(DATA / "example1.p"))
    j = json.loads(out)
    assert code == 0 and j["violations"] == [] and j["empty_clause"]


def test_obs1_cli(capsys):
    code, out, _ = run(capsys, "obs1", "--term", "c1", str(DATA / "example1.p"))
    assert code == 0 and "c2,c1" not in out.replace(" ", "")
    code, _, _ = run(capsys, "obs1", "--term", "c1", str(DATA / "game.p"))
    assert code == 0


def test_obs1_rejects(tmp_path, capsys):
    f = tmp_path / "x.p"
    f.write_text("cnf(a, axiom, (p(c) | q(d))).")
    assert run(capsys, "obs1", "--term", "c", str(f))[0] == 2


def test_translate_qbf(tmp_path, capsys):
    q = tmp_path / "q.qdimacs"
    q.write_text("p cnf 2 2\ne 1 0\na 2 0\n1 2 0\n-1 -2 0\n")
    code, out, _ = run(capsys, "translate-qbf", str(q))
    assert code == 0 and "cnf(" in out
    meta = tmp_path / "meta.json"
    code, out, _ = run(capsys, "translate-qbf", "--restricted", "--meta", str(meta), str(q))
    assert code == 0 and json.loads(meta.read_text())["encoding"] == "restricted"
    assert out.count("cnf(") == 8
    q.write_text("p cnf 1 1\ne 1\n")
    assert run(capsys, "translate-qbf", str(q))[0] == 2


def test_gen_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "--seed", "5")
    assert code == 0
    f = tmp_path / "g.p"
    f.write_text(out)
    assert json.loads(run(capsys, "check", "--json", str(f))[1])["member"]
    code, out, _ = run(capsys, "gen", "--qbf", "--seed", "5")
    assert code == 0 and out.startswith("p cnf")
    assert run(capsys, "gen", "--constants", "0")[0] == 2


def _corpus(root):
    (root / "sub").mkdir()
    (root / "a_member.p").write_text("cnf(a, axiom, (p(X) | ~q(X,c))).\n")
    (root / "sub" / "b_non.cnf").write_text("cnf(a, axiom, (p(X,Y) | q(Y,X))).\n")
    (root / "c_bad.p").write_text("cnf(a, axiom, (p(X) | ).\n")
    (root / "ignored.txt").write_text("cnf(a, axiom, (p(c))).\n")


def test_scan_three_files(tmp_path):
    _corpus(tmp_path)
    records, summary = scan_corpus(tmp_path)
    assert [os.path.basename(r.path) for r in records] == ["a_member.p", "c_bad.p", "b_non.cnf"]
    assert (summary["member"], summary["non_member"], summary["errors"]) == (1, 1, 1)
    assert summary["total"] == 3 and summary["epr"] == 2
    assert summary["fork_histogram"] == {"<=1": 1, "=2": 0, "=3": 0, ">3": 0}


def test_scan_parallel_is_deterministic(tmp_path):
    _corpus(tmp_path)
    for k in range(6):
        (tmp_path / f"g{k}.p").write_text(
            "".join(f"cnf(c{i}, axiom, ({c})).\n" for i, c in
                    enumerate(str(c) for c in generate_random_instance(GeneratorParams(k, 2, 2, 2, 3, 2)).clauses)))
    serial, s1 = scan_corpus(tmp_path, 1)
    parallel, s2 = scan_corpus(tmp_path, 3)
    strip = lambda rs: [(r.path, r.status, r.member, r.fork_indices) for r in rs]  # noqa: E731
    assert strip(serial) == strip(parallel) and s1 == s2


def test_scan_empty_directory(tmp_path):
    records, summary = scan_corpus(tmp_path)
    assert records == [] and summary["total"] == 0 and sum(summary["fork_histogram"].values()) == 0


def test_scan_skips_symlinks(tmp_path):
    _corpus(tmp_path)
    os.symlink(tmp_path / "a_member.p", tmp_path / "link.p")
    os.symlink(tmp_path / "sub", tmp_path / "linkdir")
    assert len(find_problem_files(tmp_path)) == 3


def test_scan_not_cnf(tmp_path):
    (tmp_path / "f.p").write_text("fof(a, axiom, p).\n")
    records, summary = scan_corpus(tmp_path)
    assert records[0].status == "not-cnf" and summary["not_cnf"] == 1 and summary["epr"] == 0


def test_scan_cli_outputs(tmp_path, capsys):
    _corpus(tmp_path)
    code, out, _ = run(capsys, "scan", "--csv", str(tmp_path))
    assert code == 0 and out.splitlines()[0].startswith("path,status")
    code, out, _ = run(capsys, "scan", "--json", "--jobs", "2", str(tmp_path))
    assert json.loads(out)["summary"]["total"] == 3
    code, out, _ = run(capsys, "scan", str(tmp_path))
    assert "member 1" in out


def test_csv_has_row_per_record(tmp_path):
    _corpus(tmp_path)
    records, _ = scan_corpus(tmp_path)
    assert len(records_to_csv(records).splitlines()) == 4


def test_record_invariant(tmp_path):
    _corpus(tmp_path)
    for r in scan_corpus(tmp_path)[0]:
        if r.member:
            assert r.epr and r.status == "ok"
