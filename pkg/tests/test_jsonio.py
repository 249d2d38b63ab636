import random
from fractions import Fraction

import pytest

from kantorovich import Law, product, tensor, uniform
from kantorovich.generate import (
    cyclic_monoid,
    random_functional,
    random_measure,
    random_nested,
    random_short_map,
    random_space,
)
from kantorovich import jsonio


class TestFractions:
    def test_format_always_explicit(self):
        assert jsonio.format_fraction(Fraction(1, 2)) == "1/2"
        assert jsonio.format_fraction(Fraction(3)) == "3/1"
        assert jsonio.format_fraction(Fraction(0)) == "0/1"
        assert jsonio.format_fraction(Fraction(-2, 4)) == "-1/2"

    def test_parse_accepts_both_forms(self):
        assert jsonio.parse_fraction("1/2") == Fraction(1, 2)
        assert jsonio.parse_fraction("7") == 7
        assert jsonio.parse_fraction(3) == 3

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError, match="bad rational"):
            jsonio.parse_fraction("one half")
        with pytest.raises(ValueError, match="bad rational"):
            jsonio.parse_fraction("1/0")
        with pytest.raises(ValueError, match="rational string"):
            jsonio.parse_fraction(0.5)

    def test_round_trip(self):
        rng = random.Random(1)
        for _ in range(50):
            x = Fraction(rng.randint(-999, 999), rng.randint(1, 999))
            assert jsonio.parse_fraction(jsonio.format_fraction(x)) == x


class TestLabels:
    def test_tuple_labels_encode_as_arrays(self):
        assert jsonio.label_key(("a", "u")) == '["a","u"]'
        assert jsonio.label_from_key('["a","u"]') == ("a", "u")

    def test_nested_tuple_labels(self):
        label = (("a", "u"), "z")
        assert jsonio.label_from_key(jsonio.label_key(label)) == label

    def test_plain_strings_pass_through(self):
        assert jsonio.label_key("abc") == "abc"
        assert jsonio.label_from_key("abc") == "abc"

    def test_bracket_strings_rejected(self):
        with pytest.raises(ValueError, match="may not begin"):
            jsonio.label_key("[oops")

    def test_unserializable_label(self):
        with pytest.raises(ValueError, match="not JSON-serializable"):
            jsonio.label_to_json(42)


class TestRoundTrips:
    def test_space(self):
        rng = random.Random(2)
        for _ in range(10):
            space = random_space(rng, 5)
            again = jsonio.space_from_json(jsonio.space_to_json(space))
            assert again == space

    def test_tensor_space_keeps_factors(self, two_point, three_point):
        space = tensor(two_point, three_point)
        again = jsonio.space_from_json(jsonio.space_to_json(space))
        assert again == space
        assert again.factors == (two_point, three_point)

    def test_measure(self):
        rng = random.Random(3)
        for _ in range(10):
            space = random_space(rng, 5)
            p = random_measure(rng, space)
            assert jsonio.measure_from_json(jsonio.measure_to_json(p)) == p

    def test_measure_on_tensor_space(self, two_point, three_point):
        joint = product(uniform(two_point), uniform(three_point))
        again = jsonio.measure_from_json(jsonio.measure_to_json(joint))
        assert again == joint
        assert again.space.factors == (two_point, three_point)

    def test_map(self):
        rng = random.Random(4)
        for _ in range(10):
            x = random_space(rng, 4, prefix="x")
            y = random_space(rng, 4, prefix="y")
            f = random_short_map(rng, x, y)
            assert jsonio.map_from_json(jsonio.map_to_json(f)) == f

    def test_functional(self):
        rng = random.Random(5)
        space = random_space(rng, 5)
        f = random_functional(rng, space)
        assert jsonio.functional_from_json(jsonio.functional_to_json(f)) == f

    def test_nested(self):
        rng = random.Random(6)
        space = random_space(rng, 4)
        mu = random_nested(rng, space)
        assert jsonio.nested_from_json(jsonio.nested_to_json(mu)) == mu

    def test_monoid(self):
        m = cyclic_monoid(3)
        again = jsonio.monoid_from_json(jsonio.monoid_to_json(m))
        assert again == m

    def test_law(self, two_point):
        law = Law(two_point, uniform(two_point))
        assert jsonio.law_from_json(jsonio.law_to_json(law)) == law

    def test_typed_values(self, two_point):
        rng = random.Random(7)
        values = {
            "space": two_point,
            "measure": uniform(two_point),
            "map": random_short_map(rng, two_point, two_point),
            "nested": random_nested(rng, two_point),
            "monoid": cyclic_monoid(2),
            "point": ("a", "b"),
            "count": 3,
            "flag": True,
            "ratio": Fraction(2, 7),
            "mixed": [uniform(two_point), Fraction(1, 3)],
        }
        encoded = jsonio.instance_to_json(values)
        decoded = jsonio.instance_from_json(encoded)
        assert decoded == values


class TestErrors:
    def test_reference_without_workspace(self):
        with pytest.raises(ValueError, match="without a workspace"):
            jsonio.space_from_json("X")

    def test_bad_space(self):
        with pytest.raises(ValueError, match="bad space"):
            jsonio.space_from_json(17)

    def test_tensor_needs_two_factors(self, two_point):
        with pytest.raises(ValueError, match="two factor"):
            jsonio.space_from_json({"tensor": [jsonio.space_to_json(two_point)]})

    def test_unknown_value_type(self):
        with pytest.raises(ValueError, match="unknown value type"):
            jsonio.value_from_json({"type": "whatever", "value": 1})


def test_dumps_is_deterministic(two_point):
    payload = jsonio.measure_to_json(uniform(two_point))
    assert jsonio.dumps(payload) == jsonio.dumps(dict(reversed(payload.items())))
    assert "\n" in jsonio.dumps(payload, pretty=True)
