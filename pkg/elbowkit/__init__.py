"""
elbowkit - automatic elbow detection and information-criterion order selection
"""
__version__ = "1.0.0"
