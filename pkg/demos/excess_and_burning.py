"""Contracts that destroy reward instead of redistributing it.

Normally a transfer matrix conserves value: every row sums to one.
Allowing rows to sum to less than one means a player can commit to
burning part of their reward.  That sounds wasteful, and on the
equilibrium path it never actually happens - the burnt share is an
off-path deterrent.  It matters when stakes are so lopsided that
handing the money to a co-player would tempt *them*.
"""

import numpy as np

from reward_transfer import (classify_dilemma, general_level,
                             scaled_prisoners_dilemma)


def main():
    game = scaled_prisoners_dilemma(epsilon=1e-6)
    print("payoffs (rows CC, DC, CD, DD):")
    print(game.payoffs)
    print("\nPlayer 1's stakes are ~3x player 2's. Note the classifier "
          "calls this a\nnear-dilemma only:",
          classify_dilemma(game).kind.value)
    print("(a lone cooperator adds exactly nothing to group welfare, so "
          "the strict\nwelfare condition fails on a tie; force=True "
          "searches anyway)")

    conserving = general_level(game, force=True)
    print(f"\nconserving contract: level {conserving.level:.6g}")
    print(np.round(conserving.matrix.entries, 6))

    burning = general_level(game, allow_excess=True, force=True)
    print(f"\nburning allowed: level {burning.level:.6g}")
    print(np.round(burning.matrix.entries, 6))
    print("row slack (share burnt):", np.round(burning.excess.slack, 6))

    print(
        "\nBoth contracts keep half. The difference is where player 1's "
        "other half\ngoes: the conserving contract hands it to player 2, "
        "the burning contract\ndestroys most of it and sends player 2 "
        "only the 1/18 sliver needed to kill\nplayer 2's own temptation. "
        "If player 2's temptation were any stronger,\nburning would be "
        "the only option."
    )


if __name__ == "__main__":
    main()
