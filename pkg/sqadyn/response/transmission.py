""" Transmission suppression of a probe line coupled to the array.

    In linear response Delta S21(omega) is proportional to C(omega); the
    proportionality constant lumps together the inductive coupling to the
    probe and line-impedance factors and is only known up to calibration.
"""
from dataclasses import replace

__all__ = ["transmission_suppression"]

def transmission_suppression(sus, scale=1.0):
    """ Delta S21 = |scale| C(omega), relabelled.

        The sign of `scale` only fixes the direction of the transmission dip
        and is kept on the result's `scale` field; weights stay non-negative.

        Args:
            sus: (Susceptibility)
            scale: (float, default=1.0)

        Returns:
            Susceptibility labelled 'delta_s21'.
    """
    factor = abs(float(scale))
    if scale == 1.0:
        return replace(sus, label='delta_s21')
    lines = tuple(replace(l, weight=factor*l.weight) for l in sus.lines)
    curve = None
    if sus.curve is not None:
        grid, values = sus.curve
        curve = (grid, factor*values)
    return replace(sus, lines=lines, curve=curve,
                   diagonal_weight=factor*sus.diagonal_weight,
                   transition_weight=factor*sus.transition_weight,
                   sum_rule=factor*sus.sum_rule,
                   scale=float(scale)*sus.scale,
                   label='delta_s21')
