import json

import numpy as np
import pytest

from reward_transfer import (NormalFormGame, TransferMatrix, general_level,
                             symmetrical_level)
from reward_transfer.serialize import (FormatError, dumps_game, dumps_matrix,
                                       dumps_result, extract_matrix,
                                       parse_game, parse_matrix)

PD_JSON = (
    '{\n'
    '  "payoffs": {\n'
    '    "CC": [3, 3],\n'
    '    "CD": [0, 4],\n'
    '    "DC": [4, 0],\n'
    '    "DD": [1, 1]\n'
    '  },\n'
    '  "players": 2\n'
    '}\n'
)

EXCHANGE_JSON = (
    '[\n'
    '  [0.75, 0.25],\n'
    '  [0.25, 0.75]\n'
    ']\n'
)


@pytest.fixture
def pd_json_game(pd_game):
    return pd_game


class TestGameFormat:
    def test_golden_bytes(self, pd_game):
        assert dumps_game(pd_game) == PD_JSON

    def test_round_trip(self, pd_game):
        again = parse_game(dumps_game(pd_game))
        assert again == pd_game

    def test_round_trip_is_byte_stable(self, arbitrary_game):
        text = dumps_game(arbitrary_game)
        assert dumps_game(parse_game(text)) == text

    def test_awkward_floats_survive(self):
        table = np.full((8, 3), 1.0 / 3.0)
        table[0] = [0.1, 1e-6, 1e300]
        game = NormalFormGame(table)
        again = parse_game(dumps_game(game))
        assert np.array_equal(again.payoffs, game.payoffs)

    def test_negative_zero_is_normalized(self):
        game = NormalFormGame([[-0.0, 0.0]] * 4)
        assert '"CC": [0, 0]' in dumps_game(game)

    def test_parse_rejects_missing_profile(self):
        broken = json.loads(PD_JSON)
        del broken["payoffs"]["DC"]
        with pytest.raises(FormatError, match="DC"):
            parse_game(json.dumps(broken))

    def test_parse_rejects_unknown_key(self):
        broken = json.loads(PD_JSON)
        broken["novel"] = 1
        with pytest.raises(FormatError, match="novel"):
            parse_game(json.dumps(broken))

    def test_parse_rejects_bad_profile_key(self):
        broken = json.loads(PD_JSON)
        broken["payoffs"]["CX"] = [0, 0]
        with pytest.raises(FormatError, match="CX"):
            parse_game(json.dumps(broken))

    def test_parse_rejects_wrong_row_length(self):
        broken = json.loads(PD_JSON)
        broken["payoffs"]["CC"] = [3]
        with pytest.raises(FormatError, match="CC"):
            parse_game(json.dumps(broken))

    def test_parse_rejects_missing_players(self):
        broken = json.loads(PD_JSON)
        del broken["players"]
        with pytest.raises(FormatError, match="players"):
            parse_game(json.dumps(broken))

    def test_parse_rejects_player_count_range(self):
        with pytest.raises(FormatError, match="players"):
            parse_game('{"payoffs": {}, "players": 1}')
        with pytest.raises(FormatError, match="players"):
            parse_game('{"payoffs": {}, "players": 21}')

    def test_parse_rejects_non_json(self):
        with pytest.raises(FormatError):
            parse_game("not json at all{")

    def test_parse_rejects_non_object(self):
        with pytest.raises(FormatError, match="object"):
            parse_game("[1, 2, 3]")

    def test_parse_rejects_nonfinite(self):
        broken = json.loads(PD_JSON)
        broken["payoffs"]["CC"] = [1e999, 0]
        with pytest.raises(FormatError):
            parse_game(json.dumps(broken))


class TestMatrixFormat:
    def test_golden_bytes(self):
        m = TransferMatrix([[0.75, 0.25], [0.25, 0.75]])
        assert dumps_matrix(m) == EXCHANGE_JSON

    def test_round_trip(self):
        m = TransferMatrix([[0.5, 0.2, 0.3], [0.1, 0.9, 0.0],
                            [1 / 3, 1 / 3, 1 / 3]])
        again = parse_matrix(dumps_matrix(m))
        assert np.allclose(again.entries, m.entries, atol=0)

    def test_byte_stable(self):
        text = dumps_matrix(TransferMatrix([[1 / 3, 2 / 3], [0.1, 0.9]]))
        assert dumps_matrix(parse_matrix(text)) == text

    def test_parse_rejects_ragged(self):
        with pytest.raises(FormatError):
            parse_matrix("[[0.5, 0.5], [1.0]]")

    def test_parse_rejects_bad_shares(self):
        with pytest.raises(FormatError, match="row"):
            parse_matrix("[[0.9, 0.9], [0.5, 0.5]]")
        with pytest.raises(FormatError):
            parse_matrix("[[1.5, -0.5], [0.5, 0.5]]")

    def test_parse_rejects_scalars(self):
        with pytest.raises(FormatError):
            parse_matrix("0.5")
        with pytest.raises(FormatError):
            parse_matrix("[0.5, 0.5]")


class TestResultFormat:
    def test_golden_bytes(self, pd_game):
        result = general_level(pd_game, refine_diagonal=True)
        text = dumps_result(result)
        assert text == (
            '{\n'
            '  "binding": [\n'
            '    {"coplayers": "C", "player": 1},\n'
            '    {"coplayers": "D", "player": 1},\n'
            '    {"coplayers": "C", "player": 2},\n'
            '    {"coplayers": "D", "player": 2}\n'
            '  ],\n'
            '  "excess": [0, 0],\n'
            '  "level": 0.75,\n'
            '  "matrix": [\n'
            '    [0.75, 0.25],\n'
            '    [0.25, 0.75]\n'
            '  ],\n'
            '  "mode": "general",\n'
            '  "status": "optimal",\n'
            '  "target": "CC"\n'
            '}\n'
        )

    def test_structure(self, arbitrary_game):
        result = symmetrical_level(arbitrary_game)
        doc = json.loads(dumps_result(result))
        assert set(doc) == {"binding", "excess", "level", "matrix", "mode",
                            "status", "target"}
        assert doc["mode"] == "symmetric"
        assert doc["status"] == "optimal"
        assert doc["target"] == "CCC"
        assert len(doc["matrix"]) == 3
        # players are 1-based in the serialized form
        assert all(1 <= entry["player"] <= 3 for entry in doc["binding"])
        assert all(len(entry["coplayers"]) == 2 for entry in doc["binding"])

    def test_result_matrix_parses_back(self, arbitrary_game):
        result = general_level(arbitrary_game)
        doc = dumps_result(result)
        m = parse_matrix(json.dumps(json.loads(doc)["matrix"]))
        assert np.allclose(m.entries, result.matrix.entries, atol=1e-15)


class TestExtractMatrix:
    def test_bare_matrix(self):
        m, target = extract_matrix(EXCHANGE_JSON)
        assert target is None
        assert np.allclose(m.entries, [[0.75, 0.25], [0.25, 0.75]], atol=0)

    def test_result_object(self, pd_game):
        result = general_level(pd_game, refine_diagonal=True)
        m, target = extract_matrix(dumps_result(result))
        assert target == "CC"
        assert np.allclose(m.entries, result.matrix.entries, atol=0)

    def test_rejects_objects_without_matrix(self):
        with pytest.raises(FormatError, match="matrix"):
            extract_matrix('{"level": 0.5}')

    def test_rejects_garbage(self):
        with pytest.raises(FormatError):
            extract_matrix("{{{{")
