# Tests for integration module
