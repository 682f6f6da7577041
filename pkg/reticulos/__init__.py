"""
reticulos — Banco de trabajo para retículos residuados idempotentes finitos
"""
