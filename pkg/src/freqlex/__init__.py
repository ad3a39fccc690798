"""Frequency-dictionary toolkit for literary corpora.

Pipeline: ingest -> tokenize -> lemmatize (against a curated lexicon, with a
human-in-the-loop ambiguity queue) -> frequency lists -> lexical statistics
and rank-frequency / length-distribution model fits.
"""

__version__ = "0.1.0"
