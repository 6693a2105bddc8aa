# empty file (package marker)
