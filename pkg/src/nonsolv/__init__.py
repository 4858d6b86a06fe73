"""Generation of nonsolvable subgroups by few conjugates: witnesses, sweeps and bounds."""

__version__ = "0.1.0"
