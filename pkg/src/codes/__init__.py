"""Binary linear codes"""
