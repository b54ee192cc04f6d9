"""Quandle workbench: Schlafli quandles, presentations, twist-spun trefoils."""
