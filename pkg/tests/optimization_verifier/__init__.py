# Tests for optimization_verifier
