"""Code database files and report models"""
