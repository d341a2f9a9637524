"""One invocation per CLI command (argv, stdin text), shared by the CLI and determinism tests."""

import json

from hdmock.modforms import basis_space, delta

_WEAK = basis_space(-10, 2, 40).basis[0].to_json()
_DELTA = json.dumps(delta(60).to_dict())

CASES = [
    (["qexp", "delta", "--prec", "3"], None),
    (["qexp", "eisenstein", "--k", "4", "--prec", "6"], None),
    (["qexp", "j", "--prec", "5"], None),
    (["dims", "--weight", "12"], None),
    (["--pole-bound", "1", "dims", "--weight", "-10"], None),
    (["basis", "--weight", "-10", "--pole-bound", "2", "--prec", "8"], None),
    (["bol", "quotient", "--k", "10", "--p", "1"], None),
    (["bol", "apply", "--k", "10"], _WEAK),
    (["bol", "residual", "--k", "10", "--tau", "0,2"], _WEAK),
    (["cohomology", "h0", "--k", "12"], None),
    (["cohomology", "h1", "--k", "10"], None),
    (["cohomology", "check-es", "--kmax", "12", "--pole-bounds", "1,2"], None),
    (["cohomology", "invariants", "--summands", "2,4,6", "--drop", "4"], None),
    (["cohomology", "slash", "--gamma", "S", "--coeffs", "1,2,3"], None),
    (["analytic", "eval", "--form", "delta", "--tau", "0,1"], None),
    (["analytic", "eval", "--form", "-", "--tau", "0.5,1"], _DELTA),
    (["analytic", "residual", "--form", "e4", "--weight", "4", "--tau", "0.1,1.1"], None),
    (["analytic", "star", "--weight", "12", "--tau", "0,1"], None),
    (["analytic", "dbar", "--weight", "12", "--tau", "0,1"], None),
    (["analytic", "periods", "--form", "delta", "--weight", "12"], None),
    (["analytic", "cocycle-fit", "--weight", "12"], None),
    (["analytic", "e2", "--tau", "0,1"], None),
    (["gr", "dims", "--variant", "analytic", "--depth", "2", "--kmin", "-24", "--kmax", "24",
      "--cutoff", "12"], None),
    (["gr", "h1mult", "--l", "10"], None),
    (["gr", "labels", "--weight", "0", "--depth", "1", "--variant", "analytic"], None),
    (["dims", "--weight", "12", "--table"], None),
]
