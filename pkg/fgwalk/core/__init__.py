# fgwalk/core/__init__.py
