from sqadyn.cli import main

main()
