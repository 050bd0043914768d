from iwk.cli import main

main()
