from liegraph.cli import main

main()
