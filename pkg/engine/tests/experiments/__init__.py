"""Tests for the experiment drivers."""
