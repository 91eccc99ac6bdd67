from vecconf.cli import main

main()
