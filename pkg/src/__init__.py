# Makes 'src' a package so we can run `python -m src.cli`
