# Control-theoretic core: states, group words, synthesis, rotator
