"""Test suite for the grid Ramsey workbench."""
