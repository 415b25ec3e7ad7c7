from gnoop.cli import main

main()
