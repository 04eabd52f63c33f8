"""Tests for the Stereolab API."""
