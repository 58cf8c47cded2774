"""
Command-line commands
"""
