# Certify package
