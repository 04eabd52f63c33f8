"""End-to-end runs of the catalog checks and experiments."""
