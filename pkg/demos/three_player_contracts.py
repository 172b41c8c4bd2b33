"""Why asymmetric contracts matter once there are three players.

Two stories here.  First: the same base game on two different
interaction graphs needs very different contracts.  On a complete
graph the even split is already optimal; on a one-directional circle
each player should pay only the player whose defection hurts them,
and that targeted contract keeps much more self-interest.

Second: when the welfare optimum itself is asymmetric (one player
should defect), no symmetric contract can work at all, but a general
matrix handles it.
"""

import numpy as np

from reward_transfer import (ActionProfile, BaseGame, BaseGameParams,
                             GraphKind, NotResolvableError, build_graphical,
                             general_level, social_optima, symmetrical_level,
                             too_many_cooks, verify_resolution)

PD = BaseGameParams(BaseGame.PRISONERS_DILEMMA, 3.0, 1.0)


def graphs():
    print("=== complete graph vs one-directional circle ===")
    sym_game = build_graphical(GraphKind.SYMMETRICAL, PD, 3)
    cyc_game = build_graphical(GraphKind.CYCLICAL, PD, 3)

    for name, game in [("complete", sym_game), ("circle", cyc_game)]:
        even = symmetrical_level(game)
        free = general_level(game)
        print(f"\n{name}: even-split level {even.level:.4g}, "
              f"general level {free.level:.4g}")
        print("optimal matrix:")
        print(np.round(free.matrix.entries, 6))

    print(
        "\nOn the circle, player 1's defection hurts only player 3, so "
        "player 3 'buys\noff' player 1 with their whole transfer budget "
        "rather than spreading it. That\nfocused payment raises the "
        "achievable self-interest from 0.6 to 0.75."
    )


def one_defector():
    print("\n=== when the best outcome needs a defector ===")
    game = too_many_cooks()
    print("payoffs (rows CCC..DDD):")
    print(game.payoffs)
    best = [str(p) for p in social_optima(game)]
    print("welfare-optimal profiles:", ", ".join(best))

    target = ActionProfile.from_string("DCC")
    try:
        symmetrical_level(game, target, force=True)
    except NotResolvableError as exc:
        print(f"even splitting cannot hold {target}: {exc}")

    result = general_level(game, target, force=True)
    print(f"\na general contract holds {target} at level {result.level:.6g} "
          f"(= 3/11):")
    print(np.round(result.matrix.entries, 6))
    report = verify_resolution(game, result.matrix, target)
    print("verified weakly dominant?", report.weakly_dominant)
    print("\nPlayers 2 and 3 pay nothing to the designated defector and "
          "swap most of\ntheir own rewards with each other; the cook who "
          "stays out of the kitchen is\ncompensated through the game "
          "itself, not the contract.")


if __name__ == "__main__":
    graphs()
    one_defector()
