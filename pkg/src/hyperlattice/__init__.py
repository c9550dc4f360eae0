"""Bruhat order on Latin squares and alternating sign hypermatrices via corner-sum hypermatrices."""
