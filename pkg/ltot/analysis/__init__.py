"""Composition calculus, Monte Carlo estimation and the acceptance suite."""
