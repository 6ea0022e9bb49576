"""grsegments — Gabriel-Roiter measures and segments for tame quivers over F_p."""
