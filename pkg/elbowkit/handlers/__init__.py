"""
Data generation, curve file I/O and experiment orchestration
"""
