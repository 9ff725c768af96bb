"""
gedgm - graph edit distance and graph matching from one quadratic model
"""

__version__ = "1.0.0"
