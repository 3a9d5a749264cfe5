"""Gravity-style synthetic trade networks for tests and desk-scale panels.

Each country draws a log-normal GDP.  Every pair gets a gravity mass
``(GDP_i * GDP_j) ** coupling_exponent`` and two independent multiplicative
log-normal noise factors: one forms a link propensity that ranks the pairs
(the top ones are kept until the target link density is reached), the
other forms the kept pair's trade weight.  Keeping link existence separate
from the weight's noise means the retained weights stay log-normal instead
of being truncated at the density cutoff, while high-GDP countries still
collect the most links.  Each weight splits into export/import parts by a
uniform share.

All randomness comes from the portable seeded generator in
:mod:`tradenet.rng`, consumed in a fixed order (GDPs, propensity noise,
weight noise, shares in canonical pair order), so a (params, year)
combination always produces the identical network.

This is deliberately not a calibrated economic model: there is no distance
term and no attempt to match real countries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .errors import DomainError, EmptyInputError, EmptyNetworkError
from .graph import AnnualTradeNetwork, EdgeWeights
from .rng import SplitMix64, derive_seed


@dataclass(frozen=True)
class GravityParams:
    n_countries: int
    gdp_logmean: float = 0.0
    gdp_logsd: float = 1.0
    coupling_exponent: float = 1.0
    link_density_target: float = 0.5
    noise_logsd: float = 1.0
    seed: int = 0


@dataclass(frozen=True)
class GrowthSchedule:
    """Per-year multipliers applied along a panel."""

    n_multiplier: float = 1.0
    gdp_multiplier: float = 1.0


def country_codes(n: int) -> list[str]:
    """Synthetic country codes whose string order matches index order."""
    width = max(3, len(str(n - 1)))
    return [f"C{i:0{width}d}" for i in range(n)]


def gdp_draws(params: GravityParams, year: int) -> np.ndarray:
    """The GDP values generate_network(params, year) assigns to its countries.

    This is the first block of the year's random stream, exposed so tests
    and callers can correlate node outcomes with the underlying sizes.
    """
    _validate(params)
    rng = SplitMix64(derive_seed(params.seed, year))
    return np.exp(params.gdp_logmean + params.gdp_logsd * rng.normal(params.n_countries))


def generate_network(params: GravityParams, year: int) -> AnnualTradeNetwork:
    """Generate one synthetic annual network.

    The node set is the union of retained edge endpoints, so a country
    whose every candidate pair misses the density cutoff is absent.
    """
    _validate(params)
    n = params.n_countries
    rng = SplitMix64(derive_seed(params.seed, year))
    log_gdp = params.gdp_logmean + params.gdp_logsd * rng.normal(n)

    n_pairs = n * (n - 1) // 2
    ii = np.empty(n_pairs, dtype=int)
    jj = np.empty(n_pairs, dtype=int)
    pos = 0
    for i in range(n - 1):
        count = n - 1 - i
        ii[pos:pos + count] = i
        jj[pos:pos + count] = np.arange(i + 1, n)
        pos += count
    log_mass = params.coupling_exponent * (log_gdp[ii] + log_gdp[jj])
    propensity = log_mass + params.noise_logsd * rng.normal(n_pairs)
    weights = np.exp(log_mass + params.noise_logsd * rng.normal(n_pairs))

    n_links = int(round(params.link_density_target * n_pairs))
    n_links = max(1, min(n_pairs, n_links))
    # Highest propensity first; ties (possible only through float
    # collisions) break on the canonical pair order.
    order = np.lexsort((jj, ii, -propensity))
    chosen = np.sort(order[:n_links])

    codes = country_codes(n)
    shares = rng.uniform(n_links)
    edges = {}
    for t, share in zip(chosen, shares):
        w = float(weights[t])
        w_exp = float(share) * w
        w_imp = w - w_exp
        edges[(codes[ii[t]], codes[jj[t]])] = EdgeWeights(w_exp, w_imp, w_exp + w_imp)
    return AnnualTradeNetwork(year, edges)


def generate_panel(params: GravityParams, years: Iterable[int],
                   growth: GrowthSchedule = GrowthSchedule()) -> list[AnnualTradeNetwork]:
    """One network per year, with country count and GDP scale compounding
    by the growth multipliers.

    Year t uses ``round(n_countries * n_multiplier**t)`` countries
    (round-half-even) and a GDP log-mean shifted by ``t * ln(gdp_multiplier)``.
    Seeds derive from the base seed and the year.
    """
    years = list(years)
    if not years:
        raise EmptyInputError("panel needs at least one year")
    if growth.n_multiplier <= 0 or growth.gdp_multiplier <= 0:
        raise DomainError("growth multipliers must be positive")
    nets = []
    for t, year in enumerate(years):
        n_t = round(params.n_countries * growth.n_multiplier**t)
        if n_t < 2:
            raise DomainError(f"country count shrank below 2 in year {year}")
        params_t = replace(params,
                           n_countries=n_t,
                           gdp_logmean=params.gdp_logmean + t * math.log(growth.gdp_multiplier))
        nets.append(generate_network(params_t, year))
    return nets


def multiplier_for(initial: float, final: float, steps: int) -> float:
    """Per-step multiplier that compounds ``initial`` to ``final`` over
    ``steps`` panel entries (steps - 1 applications)."""
    if initial <= 0 or final <= 0:
        raise DomainError("endpoints must be positive")
    if steps < 2:
        return 1.0
    return (final / initial) ** (1.0 / (steps - 1))


def _validate(params: GravityParams) -> None:
    if params.n_countries < 2:
        raise DomainError("need at least 2 countries")
    if params.link_density_target == 0:
        raise EmptyNetworkError("link density target of 0 yields no edges")
    if not 0.0 < params.link_density_target <= 1.0:
        raise DomainError("link density target must lie in (0, 1]")
    if params.gdp_logsd < 0 or params.noise_logsd < 0:
        raise DomainError("log standard deviations must be >= 0")
