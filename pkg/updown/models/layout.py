"""Layout of the Ferrers diagram rendering."""

from dataclasses import dataclass

from mashumaro.mixins.yaml import DataClassYAMLMixin


@dataclass
class FerrersLayout(DataClassYAMLMixin):
    """Drawing constants, in grid units unless noted.

    A YAML file with any subset of these keys overrides the defaults.
    """

    dot_radius: float = 0.35
    dot_color: str = "black"
    durfee_color: str = "#c8d8f0"
    curve_color: str = "#b03030"
    curve_style: str = "--"
    curve_width: float = 1.0
    margin: float = 1.0
    inches_per_unit: float = 0.15
    hash_salt: str = "updown"
