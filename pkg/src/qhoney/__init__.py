"""Questionnaire-based honeyword authentication.

The package implements a recognition-based login scheme whose effective
password is an *option sequence*: the letters of the alternatives a user
picks across q multiple-choice questionnaires.  Decoy credentials
(honeywords) are full option sequences kept pairwise far apart in Hamming
distance, with the true sequence's index held by a separate, minimal
honeychecker service.
"""

__version__ = "0.1.0"
