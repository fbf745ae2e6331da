import numpy as np
import pytest

from extraloop.errors import InputError
from extraloop.extension import AbelianGroup, ExtensionSpec, canonical16_spec, example512_spec
from extraloop.specfile import format_spec, load_spec, parse_spec
from extraloop.tableio import format_table

CANON = """\
# canonical order 16
[B]
rank=3
[G]
boolean_rank=1
[alpha]
e1 e2 e3 = 1
"""


def test_parse_canonical():
    spec = parse_spec(CANON)
    assert spec.rank == 3 and spec.G.order == 2
    # the seed is copied to every ordering
    assert spec.alpha[2, 0, 1] == 1 and spec.alpha[0, 0, 1] == 0
    assert spec.build() == canonical16_spec().build()


@pytest.mark.parametrize("make", [canonical16_spec, example512_spec])
def test_round_trip_is_byte_identical(make, tmp_path):
    spec = make()
    text = format_spec(spec)
    path = tmp_path / "s.spec"
    path.write_text(text)
    again = load_spec(path)
    assert format_spec(again) == text
    assert format_table(again.build()) == format_table(spec.build())


def test_cyclic_tau_and_psi():
    text = "[B]\nrank=2\n[G]\ncyclic=5\n[tau]\ne1 = -1\n[psi]\n1 1 = 3\n3 2 = 4\n"
    spec = parse_spec(text)
    assert spec.psi[1, 1] == 3 and spec.psi[3, 2] == 4
    assert (spec.tau[1] == (-np.arange(5)) % 5).all()
    L = spec.build()
    assert L.n == 20
    again = parse_spec(format_spec(spec))
    assert again.build() == L


def test_bitstring_and_integer_values_agree():
    a = parse_spec("[B]\nrank=3\n[G]\nboolean_rank=2\n[alpha]\ne1 e2 e3 = 01\n")
    b = parse_spec("[B]\nrank=3\n[G]\nboolean_rank=2\n[alpha]\ne3 e1 e2 = 2\n")
    assert (a.alpha == b.alpha).all() and a.alpha[0, 1, 2] == 2


def test_omitted_alpha_is_zero():
    spec = parse_spec("[B]\nrank=2\n[G]\nboolean_rank=1\n")
    assert spec.alpha is None and spec.psi is None
    assert (spec.resolved_psi() == 0).all()


@pytest.mark.parametrize("text", [
    "[G]\ncyclic=3\n",
    "[B]\nrank=2\n",
    "[B]\nrank=x\n[G]\ncyclic=3\n",
    "[B]\nrank=2\n[G]\ndihedral=3\n",
    "[B]\nrank=2\n[G]\ncyclic=3\n[tau]\ne3 = -1\n",
    "[B]\nrank=2\n[G]\ncyclic=5\n[tau]\ne1 = 2\n",
    "[B]\nrank=2\n[G]\ncyclic=3\n[alpha]\ne1 e2 e1 = 1\n[psi]\n1 1 = 1\n",
    "[B]\nrank=3\n[G]\nboolean_rank=1\n[alpha]\ne1 e2 = 1\n",
    "[B]\nrank=3\n[G]\nboolean_rank=1\n[alpha]\ne1 e2 e3 = 1\ne3 e2 e1 = 0\n",
    "[B]\nrank=2\n[G]\ncyclic=3\n[psi]\n1 9 = 1\n",
    "[B]\nrank=2\n[G]\ncyclic=3\n[psi]\n1 1 = 7\n",
    "[B]\nrank=2\n[G]\ncyclic=3\n[extra]\n",
    "rank=2\n",
    "[B]\nrank=2\n[B]\nrank=2\n[G]\ncyclic=3\n",
])
def test_malformed_specs(text):
    with pytest.raises(InputError):
        parse_spec(text)


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_spec(tmp_path / "nope.spec")


def test_non_symmetric_alpha_has_no_text_form():
    G = AbelianGroup.boolean(1)
    alpha = np.zeros((3, 3, 3), dtype=np.int64)
    alpha[0, 1, 2] = 1
    with pytest.raises(InputError):
        format_spec(ExtensionSpec(3, G, alpha=alpha))
