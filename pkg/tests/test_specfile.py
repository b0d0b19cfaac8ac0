import json

import pytest

from cantelli import (
    IndependentModel,
    LatentUniformModel,
    MarkovModel,
    SpecError,
    build_model,
    load_spec,
)
from cantelli.specfile import parse_spec

from conftest import SPECS


def test_all_shipped_specs_load_and_build():
    expected = {
        "coin-half": IndependentModel,
        "powerlaw-2": IndependentModel,
        "harmonic": IndependentModel,
        "nested": LatentUniformModel,
        "interleaved-nested": LatentUniformModel,
        "markov-3state": MarkovModel,
        "flipflop": MarkovModel,
        "partial-maxima": IndependentModel,
    }
    found = {}
    for path in sorted(SPECS.glob("*.json")):
        spec = load_spec(path)
        model = build_model(spec)
        found[spec.name] = type(model)
    assert found == expected


def test_spec_name_defaults_to_stem(tmp_path):
    p = tmp_path / "mymodel.json"
    p.write_text(json.dumps({"model": {"family": "independent",
                                       "marginal": {"family": "constant", "value": 0.5}}}))
    assert load_spec(p).name == "mymodel"


def test_unknown_top_level_field_rejected():
    with pytest.raises(SpecError, match=r"spec\.extra"):
        parse_spec({"model": {"family": "independent",
                              "marginal": {"family": "constant", "value": 0.5}},
                    "extra": 1})


def test_unknown_family_field_rejected():
    with pytest.raises(SpecError, match=r"marginal\.scale"):
        parse_spec({"model": {"family": "independent",
                              "marginal": {"family": "constant", "value": 0.5, "scale": 2}}})


def test_bad_row_sum_names_the_row():
    with pytest.raises(SpecError, match=r"transition\[1\].*sums"):
        parse_spec({
            "model": {
                "family": "markov",
                "transition": [[0.5, 0.5], [0.6, 0.5]],
                "initial": [1.0, 0.0],
                "events": {"mode": "constant", "members": [0]},
            }
        })


def test_bad_initial_sum_named():
    with pytest.raises(SpecError, match=r"model\.initial"):
        parse_spec({
            "model": {
                "family": "markov",
                "transition": [[0.5, 0.5], [0.5, 0.5]],
                "initial": [0.9, 0.0],
                "events": {"mode": "constant", "members": [0]},
            }
        })


def test_bad_event_member_named():
    with pytest.raises(SpecError, match="events"):
        parse_spec({
            "model": {
                "family": "markov",
                "transition": [[0.5, 0.5], [0.5, 0.5]],
                "initial": [1.0, 0.0],
                "events": {"mode": "constant", "members": [2]},
            }
        })


def test_unknown_model_family():
    with pytest.raises(SpecError, match="family"):
        parse_spec({"model": {"family": "quantum"}})


def test_threshold_offset_only_for_latents():
    with pytest.raises(SpecError, match="offset"):
        parse_spec({"model": {"family": "independent",
                              "marginal": {"family": "powerlaw", "scale": 1.0,
                                           "exponent": 1.0, "offset": -1}}})


def test_logpower_family_parses():
    spec = parse_spec({
        "model": {"family": "independent",
                  "marginal": {"family": "logpower", "scale": 1.0, "exponent": 2.0}}
    })
    model = build_model(spec)
    import math

    assert model.marginal_prob(10) == pytest.approx(1.0 / math.log(11.0) ** 2)


def test_explicit_list_without_tail_surfaces_as_spec_error(tmp_path):
    # a model that runs off its explicit list mid-analysis exits with code 2
    from cantelli.cli import EXIT_SPEC, main

    p = tmp_path / "short.json"
    p.write_text(json.dumps({
        "model": {"family": "independent",
                  "marginal": {"family": "explicit", "values": [0.5, 0.5]}}
    }))
    assert main(["analyze", str(p), "--terms", "500"]) == EXIT_SPEC


def test_latent_spec_roundtrip():
    spec = parse_spec({
        "model": {
            "family": "latent-uniform",
            "num_latents": 2,
            "coloring": [0, 1],
            "thresholds": [
                {"family": "powerlaw", "scale": 1.0, "exponent": 1.0, "offset": -1},
                {"family": "powerlaw", "scale": 1.0, "exponent": 1.0},
            ],
        }
    })
    model = build_model(spec)
    assert isinstance(model, LatentUniformModel)
    assert model.threshold(4) == pytest.approx(0.5)


def test_defaults_validation():
    with pytest.raises(SpecError, match=r"defaults\.schedule"):
        parse_spec({
            "model": {"family": "independent",
                      "marginal": {"family": "constant", "value": 0.5}},
            "defaults": {"schedule": [8, 8]},
        })
    with pytest.raises(SpecError, match=r"defaults\.bogus"):
        parse_spec({
            "model": {"family": "independent",
                      "marginal": {"family": "constant", "value": 0.5}},
            "defaults": {"bogus": 1},
        })


def test_missing_file_and_bad_json(tmp_path):
    with pytest.raises(SpecError, match="not found"):
        load_spec(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SpecError, match="invalid JSON"):
        load_spec(bad)


def test_echo_preserves_content():
    spec = load_spec(SPECS / "coin-half.json")
    echo = spec.echo()
    assert echo["name"] == "coin-half"
    assert echo["model"]["marginal"]["value"] == 0.5
    assert echo["defaults"]["schedule"] == [8, 16, 32]
