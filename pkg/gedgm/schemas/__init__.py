"""
Pydantic schemas for every file format
"""
