# Package package
