"""Pytest root marker; test modules import shared grids from this directory."""
