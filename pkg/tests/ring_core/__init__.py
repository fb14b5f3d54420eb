# Tests for ring_core
