"""geowave: geometric controllability checks and boundary-control synthesis
for quasilinear wave models on desk-scale planar grids."""

__version__ = "0.1.0"
