"""Toolkit for time-respecting arborescences in temporal digraphs."""
