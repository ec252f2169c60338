"""Permutations and permutation groups"""
