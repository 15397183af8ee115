"""Feature extraction and MLP classification for 32x32 binary digit images."""

__version__ = "0.1.0"
