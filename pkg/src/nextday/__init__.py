"""Predict whether today's news article gets a follow-up article tomorrow.

The pipeline links same-day tweets to each article (keyword seeding plus
hashtag expansion), extracts involvement and reaction features from the
linked tweets, and evaluates classifiers with stratified cross-validation.
"""

__version__ = "0.1.0"
