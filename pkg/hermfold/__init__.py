# Folded quantum Hermitian codes
