"""rsvd command-line interface."""
