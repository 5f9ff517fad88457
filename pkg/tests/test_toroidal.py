import json

import pytest

from wshuffle.ratfun import Field, var
from wshuffle.toroidal import (
    ColorSymFun,
    ZetaConfig,
    _floor_lhs,
    arc_identity_check,
    color_var,
    default_zeta,
    floor_identity_check,
    kernel_X,
    kernel_X_rhs,
    make_Abar,
    make_Anew,
    make_Bbar,
    of_check,
    relabel,
    shuffle_product_S,
    wheel_check,
)


def test_relabel_winds_with_qbar():
    # n = 2, arc [1;5): z1 z2 z3 z4 -> z_{11}, z_{21}, z_{12} qbar^-2, z_{22} qbar^-2
    assert relabel(2, 1, 5) == {1: (1, 1, 0), 2: (2, 1, 0), 3: (1, 2, -2), 4: (2, 2, -2)}


def test_kernel_hand_case():
    # k = 1, j - i = 1: X = -z_i qbar^{2i/n}
    F = Field(2)
    assert kernel_X(2, 1, 2, 1) == -var("z1") * F.qbar_frac(2)
    assert kernel_X_rhs(2, 1, 2, 1) == kernel_X(2, 1, 2, 1)


@pytest.mark.parametrize("n,L,k,side", [(1, 3, 2, 1), (2, 4, 3, -1), (3, 2, 4, 1), (2, 3, 3, -1)])
def test_kernel_identity(n, L, k, side):
    assert of_check(n, 1, 1 + L, k, side).passed


def test_floor_identity():
    rep = floor_identity_check(kmax=4, lmax=4)
    assert rep.passed and rep.params["instances"] > 100


def test_floor_display_with_swapped_denominator_differs():
    # Σ_i ⌊i k / d⌋ with d = c_{s-1} - c_s is what holds; the reversed difference does not
    c, ks = [0, -2], [1]
    good = c[0] * 1 - sum((i * 1) // 2 for i in (1, 2))
    swapped = c[0] * 1 - sum((i * 1) // -2 for i in (1, 2))
    assert good == _floor_lhs(c, ks) == -1
    assert swapped != good


@pytest.mark.parametrize("n", [1, 2])
def test_arc_identity(n):
    assert arc_identity_check(n, max_arcs=2, max_len=3, max_k=2).passed


@pytest.mark.parametrize("make", [make_Abar, make_Bbar, make_Anew])
@pytest.mark.parametrize("n,ijk", [(2, (1, 4, 1)), (2, (1, 5, 2)), (1, (1, 4, 3)), (3, (1, 5, 1))])
def test_wheel_default(make, n, ijk):
    X = make(n, *ijk, 1, default_zeta(n))
    assert X.is_color_symmetric()
    assert wheel_check(X).passed


def test_wheel_rejects_bad_pole():
    z11, z21 = var(color_var(1, 1)), var(color_var(2, 1))
    X = ColorSymFun(2, (1, 1), 1 / (z11 - z21))
    rep = wheel_check(X)
    assert rep.status == "fail"
    good = ColorSymFun(2, (1, 1), 1 / (z11 * Field(2).q ** 2 - z21))
    assert wheel_check(good).passed


def test_zero_conventions():
    z = default_zeta(2)
    assert make_Abar(2, 1, 4, 2, 1, z).is_zero()  # (j - i)/k not an integer
    assert make_Anew(2, 1, 1, 0, 1, z).f.is_one()
    assert make_Anew(2, 1, 3, 0, 1, z).is_zero()


def test_shuffle_product_degrees():
    z = default_zeta(2)
    a, b = make_Abar(2, 1, 2, 1, 1, z), make_Abar(2, 2, 3, 1, 1, z)
    ab = shuffle_product_S(a, b, z)
    assert ab.d == (1, 1)
    assert ab.is_color_symmetric()


def test_zeta_json_roundtrip(tmp_path):
    z = default_zeta(2)
    path = tmp_path / "z.json"
    path.write_text(json.dumps({"label": "default",
                                "entries": {f"{a},{b}": v.canonical_str() for (a, b), v in z.table.items()}}))
    back = ZetaConfig.from_json(path, 2)
    assert back.table == z.table
    assert back.fingerprint() == z.fingerprint()


def test_zeta_missing_entry(tmp_path):
    path = tmp_path / "z.json"
    path.write_text(json.dumps({"entries": {"1,1": "1"}}))
    with pytest.raises(KeyError):
        ZetaConfig.from_json(path, 2)


def test_fingerprint_changes_with_table():
    z = default_zeta(2)
    other = ZetaConfig(2, {**z.table, (1, 1): var("x", 2)}, "default")
    assert other.fingerprint() != z.fingerprint()
