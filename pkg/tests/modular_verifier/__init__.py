# Tests for modular_verifier
