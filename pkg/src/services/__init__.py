"""Graph, dynamics, solver, construction, audit and file services"""
