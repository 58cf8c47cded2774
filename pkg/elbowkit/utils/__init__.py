"""
Shared utilities: errors, logging, settings and seed derivation
"""
