# Tests for extremal_search
