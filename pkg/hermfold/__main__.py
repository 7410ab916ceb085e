from hermfold.cli import main

main()
