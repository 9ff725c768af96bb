"""
File storage for graphs, cost files, datasets, similarity dumps and reports
"""
