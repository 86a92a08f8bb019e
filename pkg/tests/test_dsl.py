import pytest

from girthlab.amalgam import AmalgamPresentation
from girthlab.dsl import parse_spec, tokenize
from girthlab.errors import ParseError, ValidationError
from girthlab.hnn import Classification, HnnPresentation, classify
from girthlab.oracles import DihedralGroup, FiniteGroup
from girthlab.subgroups import DihedralSubgroup

HNN = 'hnn base=(free rank=2) A=(subgroup gens="a") B=(subgroup gens="b") phi="a -> b" stable=t'
AMALGAM = (
    'amalgam left=(cayley corpus=C4 names=x) right=(cayley corpus=C6 names=y) '
    'C_left=(subgroup gens="x^2") C_right=(subgroup gens="y^3") iso="x^2 -> y^3"'
)


def test_hnn_spec():
    P = parse_spec(HNN)
    assert isinstance(P, HnnPresentation) and classify(P) == Classification.PROPER


def test_simple_groups():
    D = parse_spec("dihedral q=inf")
    assert isinstance(D, DihedralGroup) and D.q is None
    assert parse_spec("dihedral q=6").order == 12
    assert parse_spec("free rank=3").alphabet.names == ["a", "b", "c"]
    assert parse_spec("abelian rank=2 names=u,v").alphabet.names == ["u", "v"]


def test_cayley_file(tmp_path):
    from girthlab.corpus import load_entry

    f = tmp_path / "s3.cayley"
    load_entry("S3").table.save(f)
    G = parse_spec(f"cayley file={f} gens=1,2")
    assert isinstance(G, FiniteGroup) and G.order == 6
    G2 = parse_spec(f'cayley file="{f}" gens=1,2 names=p,q')
    assert G2.alphabet.names == ["p", "q"]


def test_gmn_subgroup():
    H = parse_spec("subgroup of=(dihedral q=inf) gmn m=1 n=1")
    assert isinstance(H, DihedralSubgroup) and H.structure == ("gmn", 1, 1)
    H = parse_spec("subgroup gmn m=2 n=0 of=(dihedral q=inf)")
    assert H.structure == ("gmn", 2, 0)


def test_amalgam_spec():
    P = parse_spec(AMALGAM)
    assert isinstance(P, AmalgamPresentation) and P.is_proper


def test_comments_and_newlines():
    text = "# an HNN extension\nhnn base=(free rank=2)   # the base\n  A=(subgroup gens=\"a\")\n  B=(subgroup gens=\"b\") phi=\"a -> b\""
    assert isinstance(parse_spec(text), HnnPresentation)


@pytest.mark.parametrize(
    "spec",
    [
        HNN,
        AMALGAM,
        'hnn base=(dihedral q=inf) A=(subgroup gens="a, b a b") B=(subgroup gens="b, a b a") phi="a -> a b a, b a b -> b"',
        "dihedral q=7 names=r,s",
        "abelian rank=3",
    ],
)
def test_describe_round_trip(spec):
    d = parse_spec(spec).describe()
    assert parse_spec(d).describe() == d


def test_validation_error():
    with pytest.raises(ValidationError, match="does not lie in B"):
        parse_spec('hnn base=(free rank=2) A=(subgroup gens="a") B=(subgroup gens="b") phi="a -> a b"')


@pytest.mark.parametrize(
    "spec,line,col",
    [
        ("free rank=2 foo", 1, 16),
        ("free rank=x", 1, 11),
        ("hnn base=(free rank=2", 1, 22),
        ("free\n  rank=2 rank=3", 2, 10),
        ('subgroup gens="a', 1, 15),
        ("wombat", 1, 1),
        ("free rank=2 names=a,b extra=1", 1, 23),
    ],
)
def test_parse_errors_carry_position(spec, line, col):
    with pytest.raises(ParseError) as info:
        parse_spec(spec)
    assert (info.value.line, info.value.column) == (line, col)


def test_parse_error_expected():
    with pytest.raises(ParseError) as info:
        parse_spec("hnn base=(free rank=2")
    assert info.value.expected == "')'"


def test_tokens():
    kinds = [t.kind for t in tokenize('a=(b c="d e") # x')]
    assert kinds == ["word", "punct", "punct", "word", "word", "punct", "string", "punct", "eof"]
