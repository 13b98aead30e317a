# Check package
