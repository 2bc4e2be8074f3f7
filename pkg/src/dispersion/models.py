from dataclasses import asdict, dataclass
from src.medium import NumericalFailure

DISPERSION_COLUMNS = ("nu_rad_s", "k_rad_m", "chi_re", "chi_im", "vg_m_s")


@dataclass(frozen=True)
class DispersionSample:
    nu: float
    k: float
    chi_re: float
    chi_im: float
    vg: float

    def as_row(self) -> dict[str, float]:
        return dict(zip(DISPERSION_COLUMNS, asdict(self).values()))


class DispersionSingularityError(NumericalFailure):
    pass
