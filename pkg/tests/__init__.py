# Test suite for sumset-squares
