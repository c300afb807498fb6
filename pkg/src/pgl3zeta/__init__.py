"""Ihara zeta functions of finite quotients of the PGL3 building."""
