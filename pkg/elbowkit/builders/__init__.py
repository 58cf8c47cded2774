"""
Report builders for experiment results
"""
