"""Config-driven encoder-predictor design space for sleep-stage annotation.

Subpackages:

- ``data``: EDF parsing, label mapping, resampling, splits, synthetic corpora
- ``features``: epoch segmentation and log-magnitude spectrograms
- ``models``: encoders, predictors (S4 / transformer / LSTM), model assembly
- ``training``: focal loss, cropping, learning-rate finder, trainer
- ``evaluation``: sliding-window inference, metrics, bootstrap comparison
- ``experiments``: architecture grids and the orchestration runner
"""

__version__ = "0.1.0"
