"""Run tracking"""
