import subprocess
import sys

import pytest

from fermatder.cli import EXIT_DOMAIN, EXIT_OK, EXIT_PARSE, EXIT_USAGE, run


def test_lnd_golden():
    code, out, _ = run(["--ring", "n=3;m=2,2,2;field=4", "lnd", "--matrix", "0,0,-1;0,0,-i;1,i,0"])
    assert code == EXIT_OK
    assert "LND=true" in out.splitlines()


def test_lnd_false():
    code, out, _ = run(["lnd", "--matrix", "1,0,0;0,1,-1;0,1,1"])
    assert code == EXIT_OK and out.splitlines()[-1] == "LND=false"


def test_not_a_derivation_prints_residue():
    code, out, err = run(["--ring", "n=3;m=3,3,3;field=1", "classify", "--matrix", "0,1,0;0,0,0;0,0,0"])
    assert code == EXIT_DOMAIN
    assert "residue: 3*x1^2*x2" in err


def test_reduce_golden():
    code, out, _ = run(["reduce", "x3^3"])
    assert (code, out) == (EXIT_OK, "-x1^2*x3 - x2^2*x3\n")


@pytest.mark.parametrize("expr, kind", [
    ("x4", "arity error"),
    ("x1 + (x2", "syntax error"),
    ("x1 $ x2", "lexical error"),
])
def test_parse_errors_exit_two(expr, kind):
    code, out, err = run(["reduce", expr])
    assert code == EXIT_PARSE and out == ""
    assert kind in err and "column" in err and "offset" in err


@pytest.mark.parametrize("argv", [
    ["verify", "--max-degree", "0"],
    ["kernel", "--matrix", "1,0,0;0,1,0;0,0,1", "--max-degree", "0"],
    ["frobnicate"],
    [],
    ["lnd"],
    ["lnd", "--matrix", "0,0,0;0,0,0;0,0,0", "--images", "d(x1)=0"],
    ["family", "--odd", "x"],
])
def test_usage_errors_exit_one(argv):
    assert run(argv)[0] == EXIT_USAGE


def test_bad_ring_is_a_parse_error():
    code, _, err = run(["--ring", "n=3;m=2,2", "gens"])
    assert code == EXIT_PARSE and "--ring" in err


def test_domain_errors():
    assert run(["decompose", "--matrix", "1,0;0,1"])[0] == EXIT_DOMAIN
    assert run(["--ring", "n=3;m=3,4,5", "decompose", "--matrix", "1,0,0;0,1,0;0,0,1"])[0] == EXIT_DOMAIN
    assert run(["family", "--odd", "4"])[0] == EXIT_DOMAIN
    assert run(["find-alpha", "--matrix", "1,0,0;0,1,0;0,0,1"])[0] == EXIT_DOMAIN
    assert run(["--ring", "n=3;m=3,3,3", "darboux", "x1", "--matrix", "1,0,0;0,1,0;0,0,1"])[0] == EXIT_OK
    assert run(["apply", "--images", "d(x1)=x2; d(x2)=0; d(x3)=0", "x1"])[0] == EXIT_DOMAIN
    assert run(["lnd", "--images", "d(x1)=x2^2; d(x2)=-2*x1*x2; d(x3)=0"])[0] == EXIT_DOMAIN


def test_linspace_and_gens():
    code, out, _ = run(["--ring", "n=4;m=2", "linspace"])
    assert code == EXIT_OK and out.splitlines()[-1] == "DIM=7"
    code, out, _ = run(["--ring", "n=3;m=3,4,5", "linspace"])
    assert out.splitlines()[-1] == "DIM=1"
    code, out, _ = run(["gens"])
    assert "d_13: d(x1)=-2*x3; d(x2)=0; d(x3)=2*x1" in out and out.splitlines()[-1] == "COUNT=4"


def test_classify_and_decompose_with_images():
    code, out, _ = run(["classify", "--images", "d(x1)=x1+x2; d(x2)=-x1+x2; d(x3)=x3"])
    assert code == EXIT_OK and out.splitlines()[0] == "CLASS=scalar+skew"
    code, out, _ = run(["--ring", "n=3;m=3,4,5", "classify", "--matrix", "1/3,0,0;0,1/4,0;0,0,1/5"])
    assert out.splitlines() == ["CLASS=diagonal", "alpha = 1"]


def test_kernel_find_alpha_darboux():
    code, out, _ = run(["kernel", "--matrix", "0,0,0;0,0,-1;0,1,0", "--max-degree", "2"])
    assert out.splitlines() == ["k=1 dim=1 basis=[x1]", "k=2 dim=1 basis=[x1^2]", "NONTRIVIAL at k=1"]
    code, out, _ = run(["kernel", "--images", "d(x1)=x1; d(x2)=x2-x3; d(x3)=x2+x3", "--max-degree", "3"])
    assert out.splitlines()[-1] == "TRIVIAL_UP_TO=3"
    code, out, _ = run(["find-alpha", "--matrix", "0,0,0;0,0,-1;0,1,0", "--max-degree", "8"])
    assert out.strip() == "ALPHA=1"
    code, out, _ = run(["find-alpha", "--matrix", "0,0,0;0,0,-1;0,1,0", "--candidates", "i"])
    assert out.strip() == "ALPHA=none"
    code, out, _ = run(["--ring", "n=3;m=3,4,5", "darboux", "x1^2*x3", "--alpha", "2"])
    assert "EIGENVALUE=26/15" in out and "PROPER=true" in out


def test_family_raises_conductor():
    code, out, _ = run(["family", "--even", "4", "--max-degree", "3"])
    assert code == EXIT_OK
    assert out.splitlines()[0] == "field conductor raised from 4 to 12"
    assert "LND=true" in out and out.splitlines()[-1] == "TRIVIAL_UP_TO=3"
    code, out, _ = run(["family", "--odd", "3", "--max-degree", "2"])
    assert "raised" not in out and "LND=true" in out


def test_verify_restricted_grid_and_determinism():
    argv = ["verify", "--grid", "2,2,2", "--max-degree", "3"]
    code, out, _ = run(argv)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[-1] == "FAILED=0"
    assert all(l.startswith(("PASS", "SKIP")) for l in lines[:-1])
    assert run(argv)[1] == out


def test_verify_bad_grid():
    assert run(["verify", "--grid", "2,2"])[0] == EXIT_PARSE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fermatder", "reduce", "x3^3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "-x1^2*x3 - x2^2*x3\n"
    proc = subprocess.run([sys.executable, "-m", "fermatder", "reduce", "x9"], capture_output=True, text=True)
    assert proc.returncode == 2
