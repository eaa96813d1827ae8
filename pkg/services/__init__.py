"""Computation services: integer arithmetic, linear algebra, Zak bases and overlaps"""
