"""Smoke test for the negacap_py extension module.

Build and install it first:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/negacap_py-*.whl
"""

import json
import math

import negacap_py as nc


def close(a, b, tol=1e-9):
    assert abs(a - b) <= tol, (a, b)


def channels():
    cnot = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    ch = nc.Channel.unitary(cnot, (2, 2))
    assert ch.is_cp() and ch.is_tp()
    b = ch.ec_bounds()
    close(b["lower_l"], 1.0)
    close(b["upper_l"], 1.0)
    assert b["perfect_entangler"]

    s = 1 / math.sqrt(2)
    rho = nc.density_from_vector([s, 0, s, 0])
    assert ch.saturation_check(rho)["achieves_upper"]
    close(nc.negativity(ch.apply(rho), (2, 2)), 0.5)
    close(nc.log_negativity(ch.apply(rho), (2, 2), base=math.e), math.log(2))

    m = ch.negative_part_adjoint()
    close(m[0][0].real, 0.5)

    again = nc.Channel.from_json(ch.to_json())
    assert again.dims_in == (2, 2)
    assert json.loads(ch.to_json())

    r23 = nc.Channel.builtin("rot23", 2 * math.pi / 3, 0.0)
    assert r23.dims_in == (2, 3)
    mixed = nc.Channel.mix([ch, nc.Channel.builtin("gencnot", 0.0, 0.0)], [0.5, 0.5])
    assert mixed.ec_bounds()["lower_l"] < 1.0

    try:
        nc.Channel.builtin("nope", 0.0)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown family accepted")


def gaussian():
    vac = nc.CovarianceMatrix.vacuum(2)
    assert vac.is_valid_state()
    close(vac.log_negativity([0]), 0.0)

    rr = 0.8
    c, sh = 0.5 * math.cosh(rr), 0.5 * math.sinh(rr)
    tmsv = nc.CovarianceMatrix([[c, 0, sh, 0], [0, c, 0, -sh], [sh, 0, c, 0], [0, -sh, 0, c]])
    close(tmsv.log_negativity([0], base=math.e), rr)
    close(tmsv.two_mode_invariants()["nu_tilde_minus"], 0.5 * math.exp(-rr))
    for nu in tmsv.symplectic_eigenvalues():
        close(nu, 0.5)

    blocks = nc.BlockSpec(3, 1, 1)
    assert (blocks.n_s, blocks.n_d) == (2, 0)
    close(nc.sup_block_entanglement(blocks), 0.5 * math.log2(3), 1e-9)
    assert nc.sup_block_entanglement(nc.BlockSpec(4, 2, 2)) == math.inf

    p = nc.SymmetricParams(3, 0.5, 1.0, 1e-8)
    close(nc.block_log_negativity(p, blocks), 0.5 * math.log2(3), 1e-4)
    close(nc.f_block(p, blocks), nc.boundary_limit(0.5, blocks), 1e-6)
    crit = nc.SymmetricParams(3, 0.5, 1.0, 1.0)
    close(nc.block_log_negativity(crit, blocks), 0.0, 0.0)
    assert p.purity()["global"] <= 1.0
    assert p.covariance().n_modes == 3

    q = nc.SymmetricParams.from_standard(1.0, 0.3, -0.2, 3)
    sf = q.standard_form()
    close(sf["a"], 1.0, 1e-12)
    close(sf["b"], 0.3, 1e-12)

    oracle = nc.pure_state_oracle(2.0, 0.5, 3)
    assert oracle > 0.0
    assert nc.CovarianceMatrix.pure_state(2.0, 0.5, 3).is_valid_state()


if __name__ == "__main__":
    channels()
    gaussian()
    print("smoke test OK")
