from polyvol.cli import main

main()
