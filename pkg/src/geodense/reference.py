"""Published closed forms of the density coefficients, kept for regression checks.

``GENERAL`` holds H_2..H_8 for an arbitrary Riemannian manifold and
``HARMONIC`` the even coefficients after imposing the harmonic-space
relations (odd ones vanish).
"""

from __future__ import annotations

from .traces import TracePoly

_GENERAL = {
    2: {"Tr[0]": "-1/6"},
    3: {"Tr[1]": "-1/12"},
    4: {"Tr[0]^2": "1/72", "Tr[0,0]": "-1/180", "Tr[2]": "-1/40"},
    5: {"Tr[0]*Tr[1]": "1/72", "Tr[0,1]": "-1/180", "Tr[3]": "-1/180"},
    6: {
        "Tr[0]^3": "-1/1296",
        "Tr[0]*Tr[0,0]": "1/1080",
        "Tr[0]*Tr[2]": "1/240",
        "Tr[0,0,0]": "-1/2835",
        "Tr[0,2]": "-1/630",
        "Tr[1]^2": "1/288",
        "Tr[1,1]": "-1/672",
        "Tr[4]": "-1/1008",
    },
    7: {
        "Tr[0]*Tr[0,1]": "1/1080",
        "Tr[0]^2*Tr[1]": "-1/864",
        "Tr[5]": "-1/6720",
        "Tr[0]*Tr[3]": "1/1080",
        "Tr[0,0]*Tr[1]": "1/2160",
        "Tr[0,0,1]": "-1/1890",
        "Tr[0,3]": "-1/3024",
        "Tr[1]*Tr[2]": "1/480",
        "Tr[1,2]": "-1/1120",
    },
    8: {
        "Tr[0]^4": "1/31104",
        "Tr[0]^2*Tr[0,0]": "-1/12960",
        "Tr[0]^2*Tr[2]": "-1/2880",
        "Tr[0]*Tr[0,0,0]": "1/17010",
        "Tr[0]*Tr[0,2]": "1/3780",
        "Tr[6]": "-1/51840",
        "Tr[0]*Tr[1]^2": "-1/1728",
        "Tr[0]*Tr[1,1]": "1/4032",
        "Tr[2,2]": "-1/7200",
        "Tr[0]*Tr[4]": "1/6048",
        "Tr[0,0]*Tr[2]": "1/7200",
        "Tr[0,0]^2": "1/64800",
        "Tr[0,0,0,0]": "-1/37800",
        "Tr[0,0,2]": "-17/113400",
        "Tr[0,1]*Tr[1]": "1/2160",
        "Tr[0,1,1]": "-5/18144",
        "Tr[0,4]": "-1/18144",
        "Tr[1]*Tr[3]": "1/2160",
        "Tr[1,3]": "-1/5184",
        "Tr[2]^2": "1/3200",
    },
}

# Order 6 is printed with Tr{J}Tr{J}^2; the monomial is Tr[0]*Tr[0,0].
_HARMONIC = {
    2: {"Tr[0]": "-1/6"},
    4: {"Tr[0]^2": "1/72", "Tr[0,0]": "-1/180"},
    6: {
        "Tr[0]^3": "-1/1296",
        "Tr[0]*Tr[0,0]": "1/1080",
        "Tr[0,0,0]": "-1/2835",
        "Tr[1,1]": "1/10080",
    },
    8: {
        "Tr[0]^4": "1/31104",
        "Tr[0]^2*Tr[0,0]": "-1/12960",
        "Tr[0]*Tr[0,0,0]": "1/17010",
        "Tr[0]*Tr[1,1]": "-1/60480",
        "Tr[0,0]^2": "1/64800",
        "Tr[0,0,0,0]": "-1/37800",
        "Tr[0,0,2]": "-1/340200",
        "Tr[0,1,1]": "1/54432",
        "Tr[2,2]": "-1/907200",
    },
}

GENERAL: dict[int, TracePoly] = {k: TracePoly(v) for k, v in _GENERAL.items()}
HARMONIC: dict[int, TracePoly] = {k: TracePoly(v) for k, v in _HARMONIC.items()}
HARMONIC.update({k: TracePoly() for k in (3, 5, 7)})
