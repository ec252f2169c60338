"""Fixed-subcode gluing pipeline"""
