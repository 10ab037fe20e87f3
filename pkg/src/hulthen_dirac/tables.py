"""Published reference tables and the state each printed value belongs to.

Each table row names a doublet ``(n, kappa<0, kappa>0)`` but prints a single
energy per column. :func:`resolve_row` finds which concrete ``(n, kappa)``
reproduces the printed numbers; the presets record the result so that the
``table`` command is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InvalidStateError
from .model import ModelParams, QuantumState, Scheme, SchemeConfig, Symmetry, spectroscopic_label
from .spectra import Convention, EnergySolution, energy

DELTAS = (0.025, 0.100, 0.175, 0.250)
MASS = 5.0
STRENGTH = 3.4


class RowRule(str, Enum):
    """Candidate mapping from a doublet row to the state that was evaluated."""

    KAPPA_NEGATIVE = "kappa-negative"
    KAPPA_POSITIVE_SAME_N = "kappa-positive-same-n"
    KAPPA_POSITIVE_PARTNER = "kappa-positive-partner"


@dataclass(frozen=True)
class TableRow:
    """One doublet row: orbital number, row ``n`` and published energies."""

    orbital: int
    n: int
    published: dict
    reference: tuple | None = None

    def kappas(self, symmetry: Symmetry) -> tuple[int, int]:
        """``(kappa<0, kappa>0)`` of the doublet."""
        if symmetry is Symmetry.PSEUDOSPIN:
            return -self.orbital, self.orbital + 1
        return -(self.orbital + 1), self.orbital

    def states(self, symmetry: Symmetry) -> tuple[QuantumState, QuantumState | None]:
        """The doublet as printed: the ``kappa<0`` member with ``n`` and its partner."""
        k_neg, k_pos = self.kappas(symmetry)
        n_pos = self.n - 1 if symmetry is Symmetry.PSEUDOSPIN else self.n
        partner = QuantumState(n_pos, k_pos) if n_pos >= 0 else None
        return QuantumState(self.n, k_neg), partner

    def label(self, symmetry: Symmetry) -> str:
        """Doublet in printed order: ``kappa<0`` first for pseudospin, ``kappa>0`` first for spin."""
        neg, pos = self.states(symmetry)
        right = spectroscopic_label(pos) if pos is not None else "-"
        if symmetry is Symmetry.SPIN:
            return f"({right},{spectroscopic_label(neg)})"
        return f"({spectroscopic_label(neg)},{right})"

    def candidate(self, symmetry: Symmetry, rule: RowRule) -> tuple[QuantumState, Convention] | None:
        k_neg, k_pos = self.kappas(symmetry)
        rule = RowRule(rule)
        if rule is RowRule.KAPPA_NEGATIVE:
            return QuantumState(self.n, k_neg), Convention.SIGNED
        if rule is RowRule.KAPPA_POSITIVE_SAME_N:
            return QuantumState(self.n, k_pos), Convention.SIGNED
        _, partner = self.states(symmetry)
        return (partner, Convention.SIGNED) if partner is not None else None


@dataclass(frozen=True)
class TableColumn:
    scheme: SchemeConfig
    rule: RowRule


@dataclass(frozen=True)
class TablePreset:
    """Parameters, rows and resolved evaluation rules of one table."""

    key: str
    title: str
    symmetry: Symmetry
    mass: float
    strength: float
    constant: float
    columns: dict
    rows: tuple
    deltas: tuple = DELTAS
    tolerance: float = 1e-5

    def params(self, delta: float) -> ModelParams:
        return ModelParams(self.mass, delta, self.strength, self.constant, self.symmetry)


@dataclass(frozen=True)
class TableEntry:
    """Computed value of one table cell next to the published number."""

    table: str
    column: str
    row: TableRow
    delta: float
    state: QuantumState
    convention: Convention
    rule: RowRule
    solution: EnergySolution
    published: float

    @property
    def computed(self) -> float | None:
        return self.solution.energy

    @property
    def abs_diff(self) -> float:
        e = self.computed
        return float("inf") if e is None else abs(e - self.published)


def _rows(values: dict, reference: dict | None = None) -> tuple:
    """Build rows from ``{(orbital, n): {column: [4 values]}}``."""
    out = []
    for (orbital, n), published in values.items():
        ref = tuple(reference[(orbital, n)]) if reference else None
        out.append(TableRow(orbital, n, {k: tuple(v) for k, v in published.items()}, ref))
    return tuple(out)


_R2 = SchemeConfig.improved()
_R1 = SchemeConfig.proper()

_T1 = {
    (1, 1): [0.0972235, 0.0561798, -0.0302923, -0.1544010],
    (1, 2): [0.0938034, 0.0038600, -0.1758970, -0.4125570],
    (2, 1): [0.0937343, 0.00275013, -0.1793260, -0.4196540],
    (2, 2): [0.0889591, -0.0673920, -0.3590490, -0.7041020],
    (3, 1): [0.0888560, -0.0690512, -0.3642070, -0.7148860],
    (3, 2): [0.0827390, -0.1542610, -0.5611560, -0.9872420],
    (4, 1): [0.08260190, -0.1564720, -0.5680850, -1.0019200],
    (4, 2): [0.0751593, -0.2536460, -0.7673870, -1.2384300],
}
_T1_REFERENCE = {
    (1, 1): [0.0963638, 0.0425738, -0.0710009, -0.2346580],
    (1, 2): [0.0928939, -0.0103694, -0.2174930, -0.4920870],
    (2, 1): [0.0912282, -0.0363590, -0.2930130, -0.6351320],
    (2, 2): [0.0863238, -0.1078600, -0.4732160, -0.9131390],
    (3, 1): [0.0839128, -0.1447100, -0.5760950, -1.0984500],
    (3, 2): [0.0775818, -0.2316110, -0.7705370, -1.3540100],
    (4, 1): [0.0744360, -0.2784550, -0.8953110, -1.5671200],
    (4, 2): [0.0666955, -0.3771030, -1.0870200, -1.7758200],
}
_T2_R2 = {
    (1, 0): [-0.0942003, -0.00840935, 0.1727090, 0.4336300],
    (1, 1): [-0.0869848, 0.1022580, 0.4825270, 0.9884020],
    (2, 0): [-0.0869533, 0.1027630, 0.4840740, 0.9915680],
    (2, 1): [-0.0768780, 0.2514980, 0.8697760, 1.6152900],
    (3, 0): [-0.0768308, 0.2522540, 0.8720970, 1.6200500],
    (3, 1): [-0.0639221, 0.4335670, 1.3001200, 2.2370300],
    (4, 0): [-0.0638592, 0.4345750, 1.3032300, 2.2434000],
    (4, 1): [-0.04815070, 0.6422870, 1.7441400, 2.8076500],
}
_T2_R1 = {
    (1, 0): [-0.0995915, -0.0935025, -0.0803626, -0.0607447],
    (1, 1): [-0.0989452, -0.0833617, -0.0506572, -0.00443345],
    (2, 0): [-0.0984295, -0.0750704, -0.0249639, 0.0491605],
    (2, 1): [-0.0974023, -0.0590862, 0.0210900, 0.1346870],
    (3, 0): [-0.0970491, -0.0534195, 0.0385481, 0.1706690],
    (3, 1): [-0.0956585, -0.0320936, 0.0980973, 0.2762140],
    (4, 0): [-0.0952974, -0.0262998, 0.1159560, 0.3130470],
    (4, 1): [-0.0935402, 0.000171676, 0.1871360, 0.4324460],
}
_T4_R2 = {
    (1, 1): [4.98403, 4.75186, 4.28511, 3.66359],
    (1, 2): [4.97167, 4.56926, 3.81106, 2.89559],
    (2, 1): [4.97165, 4.56885, 3.80980, 2.89301],
    (2, 2): [4.95580, 4.34617, 3.28315, 2.13127],
    (3, 1): [4.95577, 4.34556, 3.28126, 2.12740],
    (3, 2): [4.93649, 4.09036, 2.73792, 1.42801],
    (4, 1): [4.93644, 4.08954, 2.73540, 1.42282],
    (4, 2): [4.91377, 3.80963, 2.20283, 0.81097],
}
_T4_R1 = {
    (1, 1): [4.99611, 4.93821, 4.81377, 4.62906],
    (1, 2): [4.99376, 4.90141, 4.70660, 4.426637],
    (2, 1): [4.99270, 4.88469, 4.65663, 4.32792],
    (2, 2): [4.98965, 4.83772, 4.52424, 4.08931],
    (3, 1): [4.98821, 4.81515, 4.45771, 3.96084],
    (3, 2): [4.98446, 4.75851, 4.30443, 3.70026],
    (4, 1): [4.98265, 4.73030, 4.22266, 3.54589],
    (4, 2): [4.97820, 4.66464, 4.05329, 3.27673],
}
_T5_R2 = {
    (1, 0): [-4.98993, -4.84099, -4.52642, -4.07294],
    (1, 1): [-4.97738, -4.64843, -3.98679, -3.10497],
    (2, 0): [-4.97737, -4.64815, -3.98590, -3.10317],
    (2, 1): [-4.95984, -4.38924, -3.31306, -2.01110],
    (3, 0): [-4.95982, -4.38880, -3.31174, -2.00840],
    (3, 1): [-4.93736, -4.07298, -2.56340, -0.92240],
    (4, 0): [-4.93733, -4.07241, -2.56164, -0.91879],
    (4, 1): [-4.91001, -3.71030, -1.78844, 0.082117],
}
_T5_R1 = {
    (1, 0): [-4.99731, -4.95718, -4.86979, -4.73717],
    (1, 1): [-4.99375, -4.90078, -4.70098, -4.40441],
    (2, 0): [-4.99356, -4.89773, -4.69175, -4.38588],
    (2, 1): [-4.98857, -4.81949, -4.46248, -3.94799],
    (3, 0): [-4.98847, -4.81796, -4.45782, -3.93859],
    (3, 1): [-4.98205, -4.71859, -4.17448, -3.41830],
    (4, 0): [-4.98196, -4.71713, -4.17002, -3.40926],
    (4, 1): [-4.97411, -4.59756, -3.84019, -2.83080],
}


def _merge(**columns) -> dict:
    keys = next(iter(columns.values())).keys()
    return {key: {name: col[key] for name, col in columns.items()} for key in keys}


PRESETS = {
    "t1": TablePreset(
        "t1",
        "pseudospin symmetry, C_ps = -4.9",
        Symmetry.PSEUDOSPIN,
        MASS,
        STRENGTH,
        -4.9,
        {"r2": TableColumn(_R2, RowRule.KAPPA_POSITIVE_PARTNER)},
        _rows(_merge(r2=_T1), _T1_REFERENCE),
    ),
    "t2": TablePreset(
        "t2",
        "spin symmetry, C_s = 4.9",
        Symmetry.SPIN,
        MASS,
        STRENGTH,
        4.9,
        {
            "r2": TableColumn(_R2, RowRule.KAPPA_POSITIVE_SAME_N),
            "r1": TableColumn(_R1, RowRule.KAPPA_POSITIVE_SAME_N),
        },
        _rows(_merge(r2=_T2_R2, r1=_T2_R1)),
    ),
    "t4": TablePreset(
        "t4",
        "exact pseudospin symmetry, C_ps = 0",
        Symmetry.PSEUDOSPIN,
        MASS,
        STRENGTH,
        0.0,
        {
            "r2": TableColumn(_R2, RowRule.KAPPA_POSITIVE_SAME_N),
            "r1": TableColumn(_R1, RowRule.KAPPA_POSITIVE_SAME_N),
        },
        _rows(_merge(r2=_T4_R2, r1=_T4_R1)),
        tolerance=1e-4,
    ),
    "t5": TablePreset(
        "t5",
        "exact spin symmetry, C_s = 0",
        Symmetry.SPIN,
        MASS,
        STRENGTH,
        0.0,
        {
            "r2": TableColumn(_R2, RowRule.KAPPA_POSITIVE_SAME_N),
            "r1": TableColumn(_R1, RowRule.KAPPA_POSITIVE_SAME_N),
        },
        _rows(_merge(r2=_T5_R2, r1=_T5_R1)),
        tolerance=1e-4,
    ),
}


def _evaluate(preset: TablePreset, row: TableRow, column: str, rule: RowRule, index: int):
    picked = row.candidate(preset.symmetry, rule)
    if picked is None:
        return None
    state, convention = picked
    delta = preset.deltas[index]
    try:
        sol = energy(preset.params(delta), state, preset.columns[column].scheme, convention)
    except InvalidStateError:
        return None
    return TableEntry(
        preset.key, column, row, delta, state, convention, rule, sol, row.published[column][index]
    )


def resolve_row(preset: TablePreset, row: TableRow, column: str, tol: float | None = None) -> RowRule | None:
    """First candidate rule whose selected energies match all printed values.

    Returns ``None`` when no candidate reproduces the row.
    """
    tol = preset.tolerance if tol is None else tol
    for rule in RowRule:
        entries = [_evaluate(preset, row, column, rule, i) for i in range(len(preset.deltas))]
        if all(e is not None and e.abs_diff <= tol for e in entries):
            return rule
    return None


def table_entries(key: str):
    """All cells of a table preset, evaluated with the recorded rules."""
    preset = PRESETS[key]
    out = []
    for row in preset.rows:
        for column, spec in preset.columns.items():
            for i in range(len(preset.deltas)):
                entry = _evaluate(preset, row, column, spec.rule, i)
                if entry is not None:
                    out.append(entry)
    return out
