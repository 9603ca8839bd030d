"""Recorded factor tables; data files live next to this module."""
