"""
Numerical core: error curves, elbow decisions and geometric oracles
"""
