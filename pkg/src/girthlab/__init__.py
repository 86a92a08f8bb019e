"""girthlab: girth of generating sets in HNN extensions and amalgams.

Words and group oracles, Stallings folding, subgroup membership, Britton
reduction, amalgam normal forms, generating-set searches and girth
certificates, with a small command line front end.
"""

__version__ = "0.1.0"
