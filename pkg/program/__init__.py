# Program package
