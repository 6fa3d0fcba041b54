"""Laplace eigenfunctions, nodal domains and extrema bounds."""

import json

from ._nodallab import (
    __version__,
    bessel_first_zero,
    bessel_j,
    boundary_manifold_exponent,
    chiti_constant,
    closed_manifold_exponent,
    constants_csv,
    faber_krahn_constant,
    superlevel_volume_bound,
    nodal_summary,
    radial_plap_eigenpair,
    sinp_eigenpair,
    smith_sogge_alpha,
    sogge_delta,
    spectrum,
    supported_claims,
    unit_ball_volume,
    verify_json,
)


def verify(claims, domain="", **options):
    """Run check pipelines and return the report as a dict."""
    if isinstance(claims, str):
        claims = [claims]
    return json.loads(verify_json(list(claims), domain, **options))
