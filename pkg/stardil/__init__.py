# -*- coding: utf-8 -*-

"""Top-level package for stardil."""

__author__ = """stardil developers"""
__version__ = '0.1.0'
