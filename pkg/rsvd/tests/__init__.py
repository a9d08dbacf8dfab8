"""rsvd test suite."""
