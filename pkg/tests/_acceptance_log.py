"""Shared store for acceptance check result lines.

test_acceptance.py appends one line per criterion; conftest.py prints them
in the terminal summary so the verdicts are visible in every run.
"""

RESULTS: list[str] = []
