# Commands package