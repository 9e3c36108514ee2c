# Exact oscillator-representation and Kashiwara-equivalence toolkit
