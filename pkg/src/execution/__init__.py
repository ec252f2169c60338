"""Worker pool"""
