"""Parallel chip-firing toolkit"""
