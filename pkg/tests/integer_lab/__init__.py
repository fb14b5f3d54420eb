# Tests for integer_lab
