"""Bundled scenario configurations, stored as config text.

Each entry is a complete config file; `diracfock run <name>` resolves names
through this table when no file with that name exists.
"""

from __future__ import annotations

BUNDLED: dict[str, str] = {}


def _add(name: str, text: str) -> None:
    BUNDLED[name] = text.lstrip("\n")


_add(
    "flat_identities",
    """
[scenario]
name = flat_identities
units = natural
seed = 20260819
suites = identities current fock
""",
)

_add(
    "cgs_identities",
    """
[scenario]
name = cgs_identities
units = cgs
mass = 9.1093826e-28
seed = 20260819
suites = identities current
""",
)

_add(
    "flat_rest_wave",
    """
[scenario]
name = flat_rest_wave
units = natural
seed = 20260819
suites = evolve

[chart]
family = minkowski
t_span = 10.0
steps = 1000
lengths = 6.283185307179586 6.283185307179586 6.283185307179586
shape = 64 1 1

[modes]
m1 = 0 0 0 0 +1
""",
)

_add(
    "flat_boosted_wave",
    """
[scenario]
name = flat_boosted_wave
units = natural
seed = 20260819
suites = evolve current

[chart]
family = minkowski
t_span = 5.0
steps = 1000
lengths = 12.566370614359172 6.283185307179586 6.283185307179586
shape = 256 1 1

[modes]
m1 = 1 0 0 0 +1
""",
)

_add(
    "static_diagonal_connection",
    """
[scenario]
name = static_diagonal_connection
units = natural
seed = 20260819
suites = identities connection

[chart]
family = static-diagonal
t_span = 1.0
steps = 2
lengths = 6.283185307179586 6.283185307179586 6.283185307179586
shape = 64 1 1
epsilon = 0.01
profile = sin
""",
)

_add(
    "flat_pairing",
    """
[scenario]
name = flat_pairing
units = natural
seed = 20260819
suites = pairing

[chart]
family = minkowski
t_span = 6.0
steps = 1200
lengths = 32.0 6.283185307179586 6.283185307179586
shape = 512 1 1

[modes]
m1 = 0 0 0 0 +1
m2 = 0 0 0 1 +1
m3 = 1 0 0 0 +1
m4 = 1 0 0 1 -1

[pairing]
center = 16.0
width = 2.0
carrier = 2
tilt = 0.15 0.0 0.0
""",
)

_add(
    "fock_m6",
    """
[scenario]
name = fock_m6
units = natural
seed = 20260819
fock_modes = 6
suites = fock
""",
)

_add(
    "unstable_dt",
    """
[scenario]
name = unstable_dt
units = natural
seed = 20260819
suites = evolve

[chart]
family = minkowski
t_span = 10.0
steps = 20
lengths = 6.283185307179586 6.283185307179586 6.283185307179586
shape = 64 1 1

[modes]
m1 = 8 0 0 0 +1
""",
)


def scenario_names() -> tuple[str, ...]:
    return tuple(sorted(BUNDLED))
