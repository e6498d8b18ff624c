"""Small normalized machines used by the tests, the acceptance suite and
the ``gen``/``simulate`` examples.  Every machine gets the qf/qf' shuttle
on the blank symbol; state counts below exclude that pair."""

from __future__ import annotations

from .tmred import NormalizedTM, tm_from_transitions

_ = "_"


def _m(q, qp, transitions, initial="q0'"):
    return tm_from_transitions(q, qp, initial, transitions)


def figure4() -> NormalizedTM:
    """The three transitions whose run on bba is drawn row by row."""
    return _m(["q1", "q2"], ["q0'", "q2'"], [
        ("q0'", "b", "a", "S", "q1"),
        ("q1", "a", "a", "R", "q2'"),
        ("q2'", "b", "a", "S", "q2"),
    ])


def accept_empty() -> NormalizedTM:
    return _m([], ["q0'"], [("q0'", _, _, "S", "qf")])


def eraser() -> NormalizedTM:
    """Erases a word over {a, b} left to right, then accepts."""
    return _m(["e"], ["q0'"], [
        ("q0'", "a", _, "S", "e"),
        ("q0'", "b", _, "S", "e"),
        ("e", _, _, "R", "q0'"),
        ("q0'", _, _, "S", "qf"),
    ])


def even_a() -> NormalizedTM:
    """Accepts words with an even number of a's, erasing as it goes."""
    return _m(["e", "o"], ["q0'", "o'"], [
        ("q0'", "a", _, "S", "o"),
        ("q0'", "b", _, "S", "e"),
        ("o'", "a", _, "S", "e"),
        ("o'", "b", _, "S", "o"),
        ("e", _, _, "R", "q0'"),
        ("o", _, _, "R", "o'"),
        ("q0'", _, _, "S", "qf"),
    ])


def loop_forever() -> NormalizedTM:
    return _m(["q1"], ["q0'"], [
        ("q0'", "a", "a", "S", "q1"),
        ("q1", "a", "a", "S", "q0'"),
    ])


def fall_off_left() -> NormalizedTM:
    """Moves left from cell 1 on its first step."""
    return _m(["q1"], ["q0'"], [
        ("q0'", "a", "a", "L", "q1"),
        ("q1", "a", _, "S", "qf'"),
    ])


def there_and_back() -> NormalizedTM:
    """On b a^k: walks right to the first blank, then erases back to cell 1."""
    return _m(["r", "e"], ["q0'", "l'"], [
        ("q0'", "b", "b", "S", "r"),
        ("q0'", "a", "a", "S", "r"),
        ("r", "b", "b", "R", "q0'"),
        ("r", "a", "a", "R", "q0'"),
        ("q0'", _, _, "L", "e"),
        ("e", "a", _, "S", "l'"),
        ("l'", _, _, "L", "e"),
        ("e", "b", _, "S", "qf'"),
    ])


def alternating_ab() -> NormalizedTM:
    """Accepts (ab)*, erasing."""
    return _m(["x", "y"], ["q0'", "p'"], [
        ("q0'", "a", _, "S", "x"),
        ("x", _, _, "R", "p'"),
        ("p'", "b", _, "S", "y"),
        ("y", _, _, "R", "q0'"),
        ("q0'", _, _, "S", "qf"),
    ])


def toggler() -> NormalizedTM:
    """Accepts exactly "a" using only staying moves."""
    return _m(["q1"], ["q0'", "q2'"], [
        ("q0'", "a", "b", "S", "q1"),
        ("q1", "b", _, "S", "q2'"),
        ("q2'", _, _, "S", "qf"),
    ])


def dirty_accept() -> NormalizedTM:
    """Reaches qf without erasing: breaks the blank-tape obligation."""
    return _m([], ["q0'"], [("q0'", "a", "b", "S", "qf")])


def no_transitions() -> NormalizedTM:
    return _m([], ["q0'"], [])


def guess_last_a() -> NormalizedTM:
    """Nondeterministic: erases a's and guesses which one is last."""
    return _m(["q1", "q2"], ["q0'"], [
        ("q0'", "a", _, "S", "q1"),
        ("q0'", "a", _, "S", "q2"),
        ("q1", _, _, "R", "q0'"),
        ("q2", _, _, "R", "qf'"),
    ])


def guess_branch() -> NormalizedTM:
    """Nondeterministic: one branch accepts a single a, the other gets stuck."""
    return _m(["q1", "q2"], ["q0'", "q3'"], [
        ("q0'", "a", _, "S", "q1"),
        ("q0'", "a", "b", "S", "q2"),
        ("q1", _, _, "R", "q3'"),
        ("q3'", _, _, "S", "qf"),
        ("q2", "b", "b", "S", "q0'"),
    ])


CORPUS = {
    "figure4": figure4,
    "accept-empty": accept_empty,
    "eraser": eraser,
    "even-a": even_a,
    "loop-forever": loop_forever,
    "fall-off-left": fall_off_left,
    "there-and-back": there_and_back,
    "alternating-ab": alternating_ab,
    "toggler": toggler,
    "dirty-accept": dirty_accept,
    "no-transitions": no_transitions,
    "guess-last-a": guess_last_a,
    "guess-branch": guess_branch,
}


def corpus_inputs(max_len: int = 3, letters: str = "ab") -> list[str]:
    from itertools import product
    words = [""]
    for k in range(1, max_len + 1):
        words += ["".join(p) for p in product(letters, repeat=k)]
    return words
